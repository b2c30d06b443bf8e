//! Timing table for the engines on generated instances.

use std::time::Instant;

use anyhow::Context;
use rand::Rng;
use blockpoly_core::engine::{charpoly_recursive, charpoly_theorem};
use blockpoly_core::oracle::{leibniz_charpoly, LEIBNIZ_LIMIT};
use blockpoly_core::{decompose, Complex64, Polynomial, Scalar, WeightedDigraph};
use serde_json::{json, Value};

use crate::args::{BenchKind, Command, GlobalArgs, ModeArg};
use crate::gen;
use crate::run::{Outcome, Status};

pub const HEADER: [&str; 9] = [
    "instance", "kind", "order", "blocks", "cut_vertices", "bpartitions", "engine", "ms", "status",
];

struct Row {
    instance: usize,
    kind: &'static str,
    order: usize,
    blocks: usize,
    cuts: usize,
    bpartitions: u128,
    engine: &'static str,
    ms: Option<f64>,
    status: &'static str,
}

impl Row {
    fn record(&self, omit_timing: bool) -> Vec<String> {
        let ms = match (omit_timing, self.ms) {
            (false, Some(t)) => format!("{t:.3}"),
            _ => String::new(),
        };
        vec![
            self.instance.to_string(),
            self.kind.into(),
            self.order.to_string(),
            self.blocks.to_string(),
            self.cuts.to_string(),
            self.bpartitions.to_string(),
            self.engine.into(),
            ms,
            self.status.into(),
        ]
    }
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, f64) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed().as_secs_f64() * 1e3)
}

fn verdict<T: Scalar>(p: &Polynomial<T>, reference: &Polynomial<T>, tol: f64) -> &'static str {
    if p.approx_eq(reference, tol) {
        "ok"
    } else {
        "mismatch"
    }
}

fn measure<T: Scalar>(instance: usize, kind: &'static str, g: &WeightedDigraph<T>, tol: f64, rows: &mut Vec<Row>) {
    let d = decompose(g);
    let row = |engine, ms, status| Row {
        instance,
        kind,
        order: g.order(),
        blocks: d.block_count(),
        cuts: d.cut_vertices.len(),
        bpartitions: d.bpartition_count(),
        engine,
        ms,
        status,
    };
    let (theorem, t_ms) = timed(|| charpoly_theorem(g));
    let (recursive, r_ms) = timed(|| charpoly_recursive(g));
    if g.order() <= LEIBNIZ_LIMIT {
        let (exact, o_ms) = timed(|| leibniz_charpoly(&g.to_matrix()).expect("within limit"));
        rows.push(row("theorem", Some(t_ms), verdict(&theorem, &exact, tol)));
        rows.push(row("recursive", Some(r_ms), verdict(&recursive, &exact, tol)));
        rows.push(row("oracle", Some(o_ms), "ok"));
    } else {
        rows.push(row("theorem", Some(t_ms), verdict(&theorem, &recursive, tol)));
        rows.push(row("recursive", Some(r_ms), verdict(&recursive, &theorem, tol)));
        rows.push(row("oracle", None, "skipped"));
    }
}

pub fn run(cmd: &Command, args: &GlobalArgs) -> anyhow::Result<Outcome> {
    let Command::Bench { kind, blocks, block_size, order, instances, omit_timing } = *cmd else {
        unreachable!("bench::run called for another command")
    };
    let started = Instant::now();
    let mut rng = gen::rng(args.seed);
    let mut rows = Vec::new();
    for i in 0..instances {
        let (label, g) = match kind {
            BenchKind::Chain => ("chain", gen::clique_chain(&mut rng, blocks, block_size.max(2))),
            BenchKind::Random => {
                let order = order.max(3);
                let cuts = rng.random_range(1..=3.min(order - 2));
                ("random", gen::planted_cut_digraph(&mut rng, order, cuts))
            }
        };
        match args.mode {
            Some(ModeArg::Complex) => {
                let gc: WeightedDigraph<Complex64> = g.map_weights(Scalar::to_complex);
                measure(i, label, &gc, args.tolerance, &mut rows)
            }
            _ => measure(i, label, &g, args.tolerance, &mut rows),
        }
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    for r in &rows {
        w.write_record(r.record(omit_timing))?;
    }
    let text = String::from_utf8(w.into_inner().context("flushing CSV")?)?;
    let mismatch = rows.iter().any(|r| r.status == "mismatch");
    let status = if mismatch { Status::Mismatch } else { Status::Ok };
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "instance": r.instance,
                "kind": r.kind,
                "order": r.order,
                "blocks": r.blocks,
                "cut_vertices": r.cuts,
                "bpartitions": r.bpartitions.to_string(),
                "engine": r.engine,
                "ms": if omit_timing { None } else { r.ms },
                "status": r.status,
            })
        })
        .collect();
    let report = json!({
        "command": "bench",
        "status": status.as_str(),
        "seed": args.seed,
        "rows": json_rows,
        "timing_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    Ok(Outcome { status, report, text })
}
