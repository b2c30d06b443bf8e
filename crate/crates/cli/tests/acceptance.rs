//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time limit.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use blockpoly_cli::gen;
use blockpoly_core::block_graph::{complete_graph_det, feasible_tuples};
use blockpoly_core::engine::{determinant_full, permanent_full, scalar_fast_path, theorem_expansion};
use blockpoly_core::fixtures::{complete_graph, m1, m2};
use blockpoly_core::oracle::{laplace_expand, leibniz_charpoly, leibniz_det, leibniz_det_sparse, leibniz_per, leibniz_permpoly};
use blockpoly_core::schur::{degree_heuristic_report, schur_trace, SchurCase};
use blockpoly_core::{
    charpoly_recursive, charpoly_theorem, decompose, det_block_graph, determinant, enumerate_bpartitions,
    permpoly_recursive, permpoly_theorem, singularity_conditions, BigInt, Complex64, Kind, PivotRule, Scalar,
    SquareMatrix, VertexId, WeightedDigraph,
};
use num_traits::{One, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    tolerance: &'static str,
    limit: Duration,
    /// Time the fastest of this many runs (sub-millisecond limits).
    repeats: usize,
    check: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph(a: SquareMatrix<BigInt>) -> WeightedDigraph<BigInt> {
    WeightedDigraph::from_matrix(&a)
}

fn ids(sets: &[Vec<VertexId>]) -> Vec<Vec<u32>> {
    sets.iter().map(|s| s.iter().map(|v| v.0).collect()).collect()
}

fn ac1() -> Outcome {
    let d1 = decompose(&graph(m1()));
    ensure(ids(&d1.blocks) == vec![vec![1, 2, 3], vec![2, 4, 5, 6], vec![6, 7]], || format!("M1 blocks {:?}", ids(&d1.blocks)))?;
    let idx1: BTreeMap<u32, usize> = d1.cut_index.iter().map(|(v, &k)| (v.0, k)).collect();
    ensure(idx1 == BTreeMap::from([(2, 2), (6, 2)]), || format!("M1 cut-indices {idx1:?}"))?;
    let d2 = decompose(&graph(m2()));
    ensure(
        ids(&d2.blocks) == vec![vec![1, 2, 3], vec![2, 4, 5, 6], vec![6, 7], vec![6, 8]],
        || format!("M2 blocks {:?}", ids(&d2.blocks)),
    )?;
    let idx2: BTreeMap<u32, usize> = d2.cut_index.iter().map(|(v, &k)| (v.0, k)).collect();
    ensure(idx2 == BTreeMap::from([(2, 2), (6, 3)]), || format!("M2 cut-indices {idx2:?}"))?;
    let counts = (d1.bpartition_count(), d2.bpartition_count());
    let listed = (enumerate_bpartitions(&d1).count(), enumerate_bpartitions(&d2).count());
    ensure(counts == (4, 6) && listed == (4, 6), || format!("B-partition counts {counts:?}, listed {listed:?}"))?;
    Ok("M1: 3 blocks, cut-indices v2=2 v6=2, 4 B-partitions; M2: 4 blocks, v2=2 v6=3, 6 B-partitions".into())
}

fn triple_agrees(g: &WeightedDigraph<BigInt>) -> Result<(), String> {
    let a = g.to_matrix();
    let phi = leibniz_charpoly(&a).map_err(|e| e.to_string())?;
    let psi = leibniz_permpoly(&a).map_err(|e| e.to_string())?;
    ensure(charpoly_theorem(g) == phi, || "charpoly_theorem differs from leibniz".into())?;
    ensure(charpoly_recursive(g) == phi, || "charpoly_recursive differs from leibniz".into())?;
    ensure(permpoly_theorem(g) == psi, || "permpoly_theorem differs from leibniz".into())?;
    ensure(permpoly_recursive(g) == psi, || "permpoly_recursive differs from leibniz".into())
}

fn ac2() -> Outcome {
    triple_agrees(&graph(m1())).map_err(|e| format!("M1: {e}"))?;
    triple_agrees(&graph(m2())).map_err(|e| format!("M2: {e}"))?;
    let mut rng = gen::rng(2024);
    let mut by_cuts = [0usize; 3];
    for i in 0..200 {
        let cuts = 1 + i % 3;
        let g = gen::planted_cut_digraph(&mut rng, 8, cuts);
        triple_agrees(&g).map_err(|e| format!("instance {i}: {e}"))?;
        by_cuts[cuts - 1] += 1;
    }
    Ok(format!("M1, M2 and 200 random digraphs (cut-vertices 1/2/3: {by_cuts:?}); φ and ψ triples equal"))
}

fn term_labels(a: SquareMatrix<BigInt>) -> Vec<(Vec<u32>, String, Vec<String>)> {
    let e = theorem_expansion(&graph(a), Kind::Det).to_json();
    e["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let removed = t["removed"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as u32).collect();
            let summands = t["summands"].as_array().unwrap().iter().map(|s| s["label"].as_str().unwrap().to_string()).collect();
            (removed, t["multiplier_label"].as_str().unwrap().to_string(), summands)
        })
        .collect()
}

fn ac3() -> Outcome {
    let t1 = term_labels(m1());
    let want1 = [(vec![], "1"), (vec![2], "(λ-5)"), (vec![6], "(λ+4)"), (vec![2, 6], "(λ-5)(λ+4)")];
    ensure(t1.len() == 4, || format!("M1 has {} groups", t1.len()))?;
    for ((removed, label, _), (wr, wl)) in t1.iter().zip(&want1) {
        ensure(removed == wr && label == wl, || format!("M1 group {removed:?} has multiplier {label}, expected {wl}"))?;
    }
    let t2 = term_labels(m2());
    let want2 = [(vec![], "1"), (vec![2], "(λ-5)"), (vec![6], "2(λ+4)"), (vec![2, 6], "2(λ-5)(λ+4)")];
    ensure(t2.len() == 4, || format!("M2 has {} groups", t2.len()))?;
    for ((removed, label, _), (wr, wl)) in t2.iter().zip(&want2) {
        ensure(removed == wr && label == wl, || format!("M2 group {removed:?} has multiplier {label}, expected {wl}"))?;
    }
    let v6 = &t2[2].2;
    ensure(v6.iter().any(|s| s == "φ[1,2,3]φ[4,5]φ[7]φ[8]"), || format!("M2 v6 group summands {v6:?}"))?;
    Ok("M1 groups 1, (λ-5), (λ+4), (λ-5)(λ+4); M2 v6 group 2(λ+4)·φ[1,2,3]φ[4,5]φ[7]φ[8], double group 2(λ-5)(λ+4)".into())
}

fn block_graphs() -> Vec<WeightedDigraph<BigInt>> {
    let mut rng = gen::rng(5150);
    (0..100).map(|_| gen::random_block_graph(&mut rng, 12)).collect()
}

fn ac4() -> Outcome {
    let graphs = block_graphs();
    let mut max_n = 0;
    for (i, g) in graphs.iter().enumerate() {
        let bg = det_block_graph(g).map_err(|e| format!("instance {i}: {e}"))?;
        let bp = determinant(g);
        let lz = leibniz_det_sparse(&g.to_matrix()).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(bg == bp && bp == lz, || format!("instance {i} (n = {}): block graph {bg}, B-partitions {bp}, Leibniz {lz}", g.order()))?;
        max_n = max_n.max(g.order());
    }
    for n in 2..=8 {
        let k = complete_graph(n);
        let expected = BigInt::from(if n % 2 == 1 { 1 } else { -1 }) * BigInt::from(n - 1);
        let got = det_block_graph(&k).map_err(|e| e.to_string())?;
        let lz = leibniz_det(&k.to_matrix()).map_err(|e| e.to_string())?;
        ensure(got == expected && lz == expected && complete_graph_det(n) == expected, || format!("K_{n}: {got} vs {expected}"))?;
    }
    Ok(format!("100 block graphs (largest n = {max_n}) agree three ways; det(K_n) = (-1)^(n-1)(n-1) for n = 2..8"))
}

fn ac5() -> Outcome {
    let mut total = 0u128;
    for (i, g) in block_graphs().iter().enumerate() {
        let tuples = feasible_tuples(g).map_err(|e| format!("instance {i}: {e}"))?;
        let product = decompose(g).bpartition_count();
        ensure(tuples.len() as u128 == product, || format!("instance {i}: {} tuples, ∏ d_i = {product}", tuples.len()))?;
        total += product;
    }
    Ok(format!("tuple counts equal ∏ d_i on all 100 graphs ({total} tuples in total)"))
}

fn ac6() -> Outcome {
    let mut rng = gen::rng(66);
    let mut orders = Vec::new();
    for condition in 1..=4u8 {
        for i in 0..10 {
            let g = gen::singular_instance(&mut rng, condition);
            let fired = singularity_conditions(&g).map_err(|e| e.to_string())?;
            ensure(fired.contains(&condition), || format!("condition {condition}, instance {i}: predicate gave {fired:?}"))?;
            let det = leibniz_det(&g.to_matrix()).map_err(|e| format!("condition {condition}, instance {i}: {e}"))?;
            ensure(det.is_zero(), || format!("condition {condition}, instance {i}: det = {det}"))?;
            orders.push(g.order());
        }
    }
    let (lo, hi) = (orders.iter().min().unwrap(), orders.iter().max().unwrap());
    Ok(format!("4 × 10 instances (orders {lo}..{hi}) fire their condition and have det 0"))
}

const SCHUR_TOL: f64 = 1e-6;

fn schur_matches<T: blockpoly_core::schur::Eliminate>(g: &WeightedDigraph<T>, rule: PivotRule, first: Option<SchurCase>) -> Result<(), String> {
    let trace = schur_trace(g, rule);
    let exact = leibniz_det(&g.to_matrix()).map_err(|e| e.to_string())?;
    ensure(trace.value.approx_eq(&exact, SCHUR_TOL, exact.magnitude()), || format!("schur {:?} vs leibniz {:?}", trace.value, exact))?;
    if let Some(case) = first {
        let got = trace.steps.first().map(|s| s.case);
        ensure(got == Some(case), || format!("first step {got:?}, expected {case:?}"))?;
    }
    Ok(())
}

fn ac7() -> Outcome {
    let mut rng = gen::rng(77);
    let mut count = 0;
    let mut cases = [0usize; 2];
    for i in 0..100 {
        let n = 3 + i % 6;
        let g = gen::blockless_float_digraph(&mut rng, n, 0.4);
        schur_matches(&g, PivotRule::Auto, None).map_err(|e| format!("random instance {i} (n = {n}): {e}"))?;
        count += 1;
    }
    for i in 0..100 {
        let n = 3 + i % 6;
        let d_zero = i % 2 == 1;
        let case = if d_zero { SchurCase::A1SingularDZero } else { SchurCase::A1SingularDNonzero };
        let g = gen::singular_leading_digraph(&mut rng, n, d_zero);
        // Float elimination for most, exact fraction-free for every fifth.
        let r = if i % 5 == 0 {
            schur_matches(&g, PivotRule::Last, Some(case))
        } else {
            let gc: WeightedDigraph<Complex64> = g.map_weights(Scalar::to_complex);
            schur_matches(&gc, PivotRule::Last, Some(case))
        };
        r.map_err(|e| format!("singular-leading instance {i} (n = {n}): {e}"))?;
        cases[d_zero as usize] += 1;
        count += 1;
    }
    Ok(format!(
        "{count} digraphs of orders 3..8, {} with singular leading block (case 2: {}, case 3: {})",
        cases[0] + cases[1],
        cases[0],
        cases[1]
    ))
}

fn ac8() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for g in gen::all_simple_graphs(n) {
            if !g.is_connected() || !decompose(&g).cut_vertices.is_empty() {
                continue;
            }
            let r = degree_heuristic_report(&g).expect("nonempty");
            ensure(r.agree, || {
                let e: Vec<_> = g.edges().filter(|(u, v, _)| u < v).map(|(u, v, _)| (u.0, v.0)).collect();
                format!("order {n}, edges {e:?}: max degree picks {} ({} blocks), best is {} ({} blocks)", r.degree_vertex, r.degree_blocks, r.best_vertex, r.best_blocks)
            })?;
            checked += 1;
        }
    }
    let cx = degree_heuristic_report(&blockpoly_core::fixtures::heuristic_counterexample()).expect("nonempty");
    Ok(format!(
        "{checked} labelled graphs of order ≤ 5; at order 6 the heuristic can miss ({} gives {} blocks, {} gives {})",
        cx.degree_vertex, cx.degree_blocks, cx.best_vertex, cx.best_blocks
    ))
}

fn random_matrix(rng: &mut impl Rng, n: usize) -> SquareMatrix<BigInt> {
    SquareMatrix::from_fn(n, |_, _| BigInt::from(rng.random_range(-4i64..=4)))
}

fn ac9() -> Outcome {
    let mut rng = gen::rng(99);
    let samples = 60;
    for i in 0..samples {
        let g = gen::planted_cut_digraph(&mut rng, 8, 1 + i % 3);
        let n = g.order();
        let (phi, psi) = (charpoly_theorem(&g), permpoly_theorem(&g));

        // Relabelling the vertices changes nothing.
        let mut perm: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            perm.swap(k, rng.random_range(0..=k));
        }
        let h = WeightedDigraph::from_matrix(&g.to_matrix().permuted(&perm));
        ensure(charpoly_theorem(&h) == phi && permpoly_theorem(&h) == psi, || format!("instance {i}: not permutation invariant"))?;

        // Degree n, leading coefficient (−1)^n.
        let lead = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for p in [&phi, &psi] {
            ensure(p.degree() == Some(n) && p.leading() == Some(&lead), || format!("instance {i}: degree/leading coefficient"))?;
        }

        // Disjoint union multiplies.
        let other = gen::planted_cut_digraph(&mut rng, 6, 1);
        let shift = n as u32;
        let other = other.relabel(|v| VertexId(v.0 + shift)).map_err(|e| e.to_string())?;
        let edges = g.edges().chain(other.edges()).map(|(u, v, w)| ((u, v), w.clone()));
        let both = WeightedDigraph::new(g.vertices().iter().chain(other.vertices()).copied(), edges).map_err(|e| e.to_string())?;
        ensure(charpoly_theorem(&both) == &phi * &charpoly_theorem(&other), || format!("instance {i}: φ not multiplicative"))?;
        ensure(permpoly_theorem(&both) == &psi * &permpoly_theorem(&other), || format!("instance {i}: ψ not multiplicative"))?;

        // Fast path once the cut-vertices lose their loops.
        let cuts = decompose(&g).cut_vertices;
        let kept = g.edges().filter(|(u, v, _)| u != v || !cuts.contains(u)).map(|(u, v, w)| ((u, v), w.clone()));
        let f = WeightedDigraph::new(g.vertices().iter().copied(), kept).map_err(|e| e.to_string())?;
        ensure(scalar_fast_path(&f, Kind::Det) == Some(determinant_full(&f)), || format!("instance {i}: det fast path"))?;
        ensure(scalar_fast_path(&f, Kind::Per) == Some(permanent_full(&f)), || format!("instance {i}: per fast path"))?;
    }

    let mut subsets = 0;
    for i in 0..40 {
        let a = random_matrix(&mut rng, 4 + i % 2);
        let n = a.order();
        let (det, per) = (leibniz_det(&a).unwrap(), leibniz_per(&a).unwrap());
        for mask in 1u32..(1 << n) - 1 {
            let rows: Vec<usize> = (0..n).filter(|r| mask & (1 << r) != 0).collect();
            let (d, p) = laplace_expand(&a, &rows).map_err(|e| e.to_string())?;
            ensure(d == det && p == per, || format!("matrix {i}: Laplace along rows {rows:?} differs"))?;
            subsets += 1;
        }
    }
    Ok(format!("{samples} digraphs for invariance, degree, products and fast path; Laplace on 40 matrices over {subsets} row sets"))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: "AC1", title: "golden block structure and B-partition counts", tolerance: "exact", limit: Duration::from_millis(1), repeats: 5, check: ac1 },
    Criterion { id: "AC2", title: "theorem = recursive = Leibniz for φ and ψ", tolerance: "exact", limit: Duration::from_secs(30), repeats: 1, check: ac2 },
    Criterion { id: "AC3", title: "per-term breakdown of M1 and M2", tolerance: "exact symbolic", limit: Duration::from_secs(1), repeats: 1, check: ac3 },
    Criterion { id: "AC4", title: "block-graph determinant", tolerance: "exact", limit: Duration::from_secs(10), repeats: 1, check: ac4 },
    Criterion { id: "AC5", title: "feasible tuples counted by ∏ d_i", tolerance: "exact", limit: Duration::from_secs(10), repeats: 1, check: ac5 },
    Criterion { id: "AC6", title: "singularity conditions imply det 0", tolerance: "exact", limit: Duration::from_secs(5), repeats: 1, check: ac6 },
    Criterion { id: "AC7", title: "Schur elimination against Leibniz", tolerance: "1e-6 relative", limit: Duration::from_secs(10), repeats: 1, check: ac7 },
    Criterion { id: "AC8", title: "max-degree pivot is optimal below order 6", tolerance: "exact", limit: Duration::from_secs(10), repeats: 1, check: ac8 },
    Criterion { id: "AC9", title: "property suite", tolerance: "exact", limit: Duration::from_secs(30), repeats: 1, check: ac9 },
];

fn main() -> ExitCode {
    let mut failures = 0;
    for c in CRITERIA {
        let mut best = Duration::MAX;
        let mut result = Ok(String::new());
        for _ in 0..c.repeats.max(1) {
            let t = Instant::now();
            result = (c.check)();
            best = best.min(t.elapsed());
            if result.is_err() {
                break;
            }
        }
        let in_time = best <= c.limit;
        let pass = result.is_ok() && in_time;
        if !pass {
            failures += 1;
        }
        let detail = match (&result, in_time) {
            (Ok(d), true) => d.clone(),
            (Ok(d), false) => format!("too slow; {d}"),
            (Err(e), _) => e.clone(),
        };
        println!(
            "{} {} {}: {} [tolerance {}, {:.3} ms, limit {} ms]",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            detail,
            c.tolerance,
            best.as_secs_f64() * 1e3,
            c.limit.as_millis()
        );
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria failed", CRITERIA.len());
        ExitCode::FAILURE
    }
}
