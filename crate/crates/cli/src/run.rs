//! Command dispatch. Every command produces a JSON report and a plain-text
//! rendering; `main` prints one of them.

use std::fmt::Display;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use blockpoly_core::block_graph::explain;
use blockpoly_core::bpartition::scalar_summand;
use blockpoly_core::dot::{to_dot, DotOptions};
use blockpoly_core::engine::{polynomial, recursive_polynomial, theorem_expansion, Engine};
use blockpoly_core::io::{self, Format};
use blockpoly_core::oracle::{self, Quantity};
use blockpoly_core::schur::{schur_trace, Eliminate, PivotRule};
use blockpoly_core::singular::singularity_report;
use blockpoly_core::{
    decompose, determinant, enumerate_bpartitions, is_block_graph, permanent, phi_summand, BigInt, CoefficientMode,
    Complex64, Kind, OracleReport, Polynomial, Scalar, WeightedDigraph,
};
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, EngineArg, GlobalArgs};
use crate::bench;

/// Above this many cut-vertices the per-term breakdown is only written
/// with `--explain`.
const EXPANSION_CUT_LIMIT: usize = 10;

/// A configuration problem: bad flag combination or unusable mode.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_error<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(ConfigError(msg.into()).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub text: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Mismatch => 1,
        }
    }
}

struct Report {
    fields: Map<String, Value>,
    text: String,
    status: Status,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), command.into());
        Report {
            fields,
            text: String::new(),
            status: Status::Ok,
        }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    fn line(&mut self, s: impl Display) {
        self.text.push_str(&s.to_string());
        self.text.push('\n');
    }

    fn finish(mut self, started: Instant) -> Outcome {
        self.set("status", self.status.as_str());
        self.set("timing_ms", started.elapsed().as_secs_f64() * 1e3);
        Outcome {
            status: self.status,
            report: Value::Object(self.fields),
            text: self.text,
        }
    }
}

/// JSON for a count that may exceed `u64`.
fn count_json(c: u128) -> Value {
    u64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::String(c.to_string()))
}

/// Build the JSON report for an error, in the same envelope.
pub fn error_report(command: &str, err: &anyhow::Error) -> Value {
    let mut e = Map::new();
    let kind = if let Some(core) = err.downcast_ref::<blockpoly_core::Error>() {
        match core {
            blockpoly_core::Error::Parse { line, column, .. } => {
                e.insert("line".into(), (*line).into());
                e.insert("column".into(), (*column).into());
                "format"
            }
            blockpoly_core::Error::NotSquare { row, .. } => {
                e.insert("line".into(), (*row).into());
                "format"
            }
            blockpoly_core::Error::NonInteger { .. } => "config",
            blockpoly_core::Error::Io(_) => "io",
            _ => "input",
        }
    } else if err.downcast_ref::<ConfigError>().is_some() {
        "config"
    } else if err.downcast_ref::<std::io::Error>().is_some() {
        "io"
    } else {
        "input"
    };
    e.insert("kind".into(), kind.into());
    e.insert("message".into(), format!("{err:#}").into());
    json!({ "command": command, "status": "error", "error": e })
}

pub enum Loaded {
    Int(WeightedDigraph<BigInt>),
    Complex(WeightedDigraph<Complex64>),
}

fn input_name(g: &GlobalArgs) -> Value {
    match &g.input {
        Some(p) if p != Path::new("-") => p.display().to_string().into(),
        _ => Value::Null,
    }
}

pub fn load(g: &GlobalArgs) -> anyhow::Result<Loaded> {
    let parsed = match &g.input {
        Some(p) if p != Path::new("-") => {
            let format = g.format.unwrap_or_else(|| Format::from_path(p));
            io::read_path(p, format).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            io::parse_str(&text, g.format.unwrap_or(Format::MatrixMarket)).context("reading standard input")?
        }
    };
    let mode = g.mode.map(CoefficientMode::from).unwrap_or(if parsed.is_integral() {
        CoefficientMode::Int
    } else {
        CoefficientMode::Complex
    });
    Ok(match mode {
        CoefficientMode::Int => {
            let a = parsed.into_int().context("integer mode needs integer entries")?;
            Loaded::Int(WeightedDigraph::from_matrix(&a))
        }
        CoefficientMode::Complex => Loaded::Complex(WeightedDigraph::from_matrix(&parsed.into_complex())),
    })
}

/// Parse the command line and run it.
pub fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(t) = cli.global.threads {
        if t == 0 {
            return config_error("--threads must be positive");
        }
        // A pool may already exist when called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    if let Command::Bench { .. } = cli.command {
        return bench::run(&cli.command, &cli.global);
    }
    match load(&cli.global)? {
        Loaded::Int(g) => dispatch(&g, &cli.command, &cli.global),
        Loaded::Complex(g) => dispatch(&g, &cli.command, &cli.global),
    }
}

fn dispatch<T: Eliminate + Display>(g: &WeightedDigraph<T>, cmd: &Command, args: &GlobalArgs) -> anyhow::Result<Outcome> {
    let started = Instant::now();
    let mut r = Report::new(cmd.name());
    r.set("input", input_name(args));
    r.set("mode", T::MODE.as_str());
    r.set("order", g.order());
    match cmd {
        Command::Charpoly => poly_command(g, Kind::Det, args, &mut r)?,
        Command::Permpoly => poly_command(g, Kind::Per, args, &mut r)?,
        Command::Det => scalar_command(g, Kind::Det, args, &mut r)?,
        Command::Per => scalar_command(g, Kind::Per, args, &mut r)?,
        Command::Blocks { dot, color_blocks } => {
            let d = decompose(g);
            r.set("decomposition", d.to_json());
            r.set("bpartition_count", count_json(d.bpartition_count()));
            if *dot {
                let text = to_dot(g, &d, DotOptions { color_blocks: *color_blocks });
                r.text.push_str(&text);
                r.set("dot", text);
            } else {
                for (i, b) in d.blocks.iter().enumerate() {
                    let ids: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                    r.line(format!("block {}: {}", i + 1, ids.join(" ")));
                }
                for (v, k) in &d.cut_index {
                    r.line(format!("cut-vertex {v}: cut-index {k}"));
                }
            }
        }
        Command::Bpartitions { count_only } => {
            let d = decompose(g);
            let count = d.bpartition_count();
            r.set("bpartition_count", count_json(count));
            if *count_only {
                r.line(count);
            } else {
                let mut list = Vec::new();
                for p in enumerate_bpartitions(&d) {
                    let summand = phi_summand(&p, g);
                    let det = scalar_summand(&p, g, Kind::Det);
                    r.line(format!("{}  det-summand {det}", p.label(Kind::Det)));
                    let mut j = p.to_json();
                    j["label"] = p.label(Kind::Det).into();
                    j["summand"] = summand.to_json();
                    j["det_summand"] = det.to_json();
                    list.push(j);
                }
                r.set("decomposition", d.to_json());
                r.set("partitions", list);
            }
        }
        Command::SingularCheck => {
            let rep = singularity_report(g)?;
            let ids = rep.conditions();
            r.line(if ids.is_empty() {
                "no condition applies".to_string()
            } else {
                format!("singular by conditions {ids:?}")
            });
            r.set(
                "singularity",
                json!({ "singular": rep.is_singular(), "conditions": ids, "witnesses": rep.witnesses }),
            );
        }
        Command::SchurDet { pivot, trace } => {
            let t = schur_trace(g, PivotRule::from(*pivot));
            r.set("engine", "schur");
            r.set("value", t.value.to_json());
            r.line(&t.value);
            if *trace {
                r.set("schur", t.to_json());
            }
        }
        Command::Verify => verify(g, args, &mut r),
        Command::Bench { .. } => unreachable!("handled before loading"),
    }
    Ok(r.finish(started))
}

fn poly_command<T: Scalar + Display>(g: &WeightedDigraph<T>, kind: Kind, args: &GlobalArgs, r: &mut Report) -> anyhow::Result<()> {
    let d = decompose(g);
    r.set("engine", args.engine.name());
    r.set("decomposition", d.to_json());
    r.set("bpartition_count", count_json(d.bpartition_count()));
    let want_terms = args.explain || d.cut_vertices.len() <= EXPANSION_CUT_LIMIT;
    let p = match args.engine {
        EngineArg::Theorem if want_terms => {
            let e = theorem_expansion(g, kind);
            r.set("expansion", e.to_json());
            e.total
        }
        EngineArg::Theorem => polynomial(g, kind, Engine::Theorem)?,
        EngineArg::Recursive => recursive_polynomial(g, kind),
        EngineArg::Oracle => polynomial(g, kind, Engine::Oracle)?,
        EngineArg::BlockGraph => return config_error("the blockgraph engine only computes determinants"),
    };
    r.line(&p);
    r.set("polynomial", p.to_json());
    Ok(())
}

fn scalar_command<T: Scalar + Display>(g: &WeightedDigraph<T>, kind: Kind, args: &GlobalArgs, r: &mut Report) -> anyhow::Result<()> {
    r.set("engine", args.engine.name());
    let value = match args.engine {
        EngineArg::Theorem => match kind {
            Kind::Det => determinant(g),
            Kind::Per => permanent(g),
        },
        EngineArg::Recursive => recursive_polynomial(g, kind).eval_at_zero(),
        EngineArg::Oracle => {
            let a = g.to_matrix();
            match kind {
                Kind::Det => oracle::leibniz_det(&a)?,
                Kind::Per => oracle::leibniz_per(&a)?,
            }
        }
        EngineArg::BlockGraph => {
            if kind == Kind::Per {
                return config_error("the blockgraph engine only computes determinants");
            }
            let e = explain(g)?;
            if args.explain {
                r.set("tuples", serde_json::to_value(&e.tuples)?);
            }
            from_big(&e.det)
        }
    };
    if args.explain && args.engine == EngineArg::Theorem {
        r.set("expansion", theorem_expansion(g, kind).to_json());
    }
    let d = decompose(g);
    r.set("decomposition", d.to_json());
    r.set("bpartition_count", count_json(d.bpartition_count()));
    r.line(&value);
    r.set("value", value.to_json());
    Ok(())
}

/// An exact integer in the run's coefficient ring.
fn from_big<T: Scalar>(b: &BigInt) -> T {
    let s = b.to_string();
    T::from_json(&Value::String(s.clone()))
        .or_else(|| T::from_json(&json!([s.parse::<f64>().unwrap_or(f64::NAN), 0.0])))
        .expect("integers embed in both rings")
}

/// Every engine against every oracle that accepts this order.
fn verify<T: Eliminate>(g: &WeightedDigraph<T>, args: &GlobalArgs, r: &mut Report) {
    let tol = args.tolerance;
    let a = g.to_matrix();
    let n = g.order();
    let subject = args.input.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "stdin".into());
    let mut reports = Vec::new();

    let theorem = [Kind::Det, Kind::Per].map(|k| polynomial(g, k, Engine::Theorem).expect("theorem engine"));
    let recursive = [Kind::Det, Kind::Per].map(|k| recursive_polynomial(g, k));
    let quantities = [Quantity::Charpoly, Quantity::Permpoly];
    let scalars = [Quantity::Det, Quantity::Per];

    for i in 0..2 {
        let q = quantities[i];
        reports.push(OracleReport::compare_polys(&subject, q, "theorem", "recursive", &theorem[i], &recursive[i], tol));
        if n <= oracle::LEIBNIZ_LIMIT {
            let exact = if i == 0 { oracle::leibniz_charpoly(&a) } else { oracle::leibniz_permpoly(&a) }.expect("within limit");
            for (name, p) in [("theorem", &theorem[i]), ("recursive", &recursive[i])] {
                reports.push(OracleReport::compare_polys(&subject, q, name, "leibniz", p, &exact, tol));
            }
        }
    }
    if (1..=oracle::FADDEEV_LIMIT).contains(&n) {
        let fl = oracle::faddeev_leverrier(&a.to_complex()).expect("within limit");
        let as_complex = Polynomial::new(theorem[0].coeffs().iter().map(Scalar::to_complex).collect());
        // Float recurrence; its error grows with the order.
        let ftol = tol.max(1e-9 * n as f64);
        reports.push(OracleReport::compare_polys(&subject, Quantity::Charpoly, "theorem", "faddeev-leverrier", &as_complex, &fl, ftol));
    }

    let det = determinant(g);
    let per = permanent(g);
    let schur = schur_trace(g, PivotRule::Auto).value;
    let mut scalar_oracles: Vec<(&str, T, T)> = Vec::new();
    if n <= oracle::LEIBNIZ_LIMIT {
        scalar_oracles.push(("leibniz", oracle::leibniz_det(&a).expect("within limit"), oracle::leibniz_per(&a).expect("within limit")));
    }
    if (2..=oracle::LAPLACE_LIMIT).contains(&n) {
        let (d, p) = oracle::laplace_expand(&a, &[0]).expect("proper row set");
        scalar_oracles.push(("laplace", d, p));
    }
    for (name, od, op) in &scalar_oracles {
        reports.push(OracleReport::compare_scalars(&subject, scalars[0], "blocks", name, &det, od, tol));
        reports.push(OracleReport::compare_scalars(&subject, scalars[1], "blocks", name, &per, op, tol));
        // The float elimination is compared at the pinned Schur tolerance.
        let stol = if T::MODE == CoefficientMode::Complex { tol.max(1e-6) } else { tol };
        reports.push(OracleReport::compare_scalars(&subject, scalars[0], "schur", name, &schur, od, stol));
    }
    if scalar_oracles.is_empty() {
        reports.push(OracleReport::compare_scalars(&subject, Quantity::Det, "blocks", "theorem", &det, &theorem[0].eval_at_zero(), tol));
    }
    if g.check_simple().is_ok() && is_block_graph(g) {
        if let Ok(bg) = blockpoly_core::det_block_graph(g) {
            reports.push(OracleReport::compare_scalars(&subject, Quantity::Det, "blockgraph", "blocks", &from_big::<T>(&bg), &det, tol));
        }
    }

    let failed = reports.iter().filter(|x| !x.passed()).count();
    r.set("engine", "all");
    r.line(format!("{} checks, {} mismatches", reports.len(), failed));
    for x in reports.iter().filter(|x| !x.passed()) {
        r.line(format!("mismatch: {:?} {} vs {}", x.quantity, x.engine, x.oracle));
    }
    if failed > 0 {
        r.status = Status::Mismatch;
    }
    r.set("reports", serde_json::to_value(&reports).expect("serializable"));
}
