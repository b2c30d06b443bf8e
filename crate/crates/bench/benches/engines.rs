use blockpoly_cli::gen;
use blockpoly_core::engine::{charpoly_recursive, charpoly_theorem, determinant};
use blockpoly_core::oracle::leibniz_charpoly;
use blockpoly_core::schur::{det_schur, PivotRule};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn engines_on_planted(c: &mut Criterion) {
    let mut rng = gen::rng(11);
    let g = gen::planted_cut_digraph(&mut rng, 8, 2);
    let a = g.to_matrix();
    let mut group = c.benchmark_group("charpoly_order8");
    group.bench_function("theorem", |b| b.iter(|| charpoly_theorem(&g)));
    group.bench_function("recursive", |b| b.iter(|| charpoly_recursive(&g)));
    group.bench_function("leibniz", |b| b.iter(|| leibniz_charpoly(&a).unwrap()));
    group.finish();
}

fn triangle_chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("k3_chain");
    group.sample_size(20);
    for k in [2usize, 4, 8, 12] {
        let g = gen::clique_chain(&mut gen::rng(k as u64), k, 3);
        group.bench_with_input(BenchmarkId::new("theorem", k), &g, |b, g| b.iter(|| charpoly_theorem(g)));
        group.bench_with_input(BenchmarkId::new("recursive", k), &g, |b, g| b.iter(|| charpoly_recursive(g)));
        group.bench_with_input(BenchmarkId::new("determinant", k), &g, |b, g| b.iter(|| determinant(g)));
    }
    group.finish();
}

fn schur_pivots(c: &mut Criterion) {
    let g = gen::blockless_digraph(&mut gen::rng(5), 8, 0.3);
    let mut group = c.benchmark_group("schur_order8");
    for (name, rule) in [("exhaustive", PivotRule::Exhaustive), ("max_degree", PivotRule::MaxDegree)] {
        group.bench_function(name, |b| b.iter(|| det_schur(&g, rule)));
    }
    group.finish();
}

criterion_group!(benches, engines_on_planted, triangle_chains, schur_pivots);
criterion_main!(benches);
