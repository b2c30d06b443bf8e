//! Seeded random instances for tests, benchmarks and the acceptance suite.

use blockpoly_core::blocks::decompose;
use blockpoly_core::oracle::leibniz_det;
use blockpoly_core::{BigInt, Complex64, VertexId, WeightedDigraph};
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vid(i: usize) -> VertexId {
    VertexId::from_index(i)
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let w = rng.random_range(-bound..=bound);
        if w != 0 {
            return w;
        }
    }
}

/// Arcs of a 2-connected weighted block on `members`: a cycle (or a single
/// edge for two vertices), each link in one or both directions, plus random
/// chords.
fn block_arcs(rng: &mut impl Rng, members: &[usize], density: f64, out: &mut Vec<((VertexId, VertexId), BigInt)>) {
    let s = members.len();
    let mut linked = vec![vec![false; s]; s];
    let links: Vec<(usize, usize)> = match s {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..s).map(|i| (i, (i + 1) % s)).collect(),
    };
    let arc = |i: usize, j: usize, rng: &mut dyn rand::RngCore, out: &mut Vec<_>| {
        out.push(((vid(members[i]), vid(members[j])), BigInt::from(nonzero(rng, 5))));
    };
    for &(i, j) in &links {
        linked[i][j] = true;
        linked[j][i] = true;
        match rng.random_range(0..3) {
            0 => arc(i, j, rng, out),
            1 => arc(j, i, rng, out),
            _ => {
                arc(i, j, rng, out);
                arc(j, i, rng, out);
            }
        }
    }
    for (i, row) in linked.iter().enumerate() {
        for (j, &l) in row.iter().enumerate() {
            if i != j && !l && rng.random_bool(density) {
                arc(i, j, rng, out);
            }
        }
    }
}

/// Random integer digraph of order at most `max_order` whose underlying
/// graph is connected with exactly `cuts` cut-vertices. Weights lie in
/// `-5..=5`; about half the vertices carry loops.
pub fn planted_cut_digraph(rng: &mut impl Rng, max_order: usize, cuts: usize) -> WeightedDigraph<BigInt> {
    assert!(max_order >= cuts + 2, "order too small for {cuts} cut-vertices");
    loop {
        let blocks = cuts + 1;
        // Every block has at least two vertices; spread the spare budget.
        let mut sizes = vec![2usize; blocks];
        let mut spare = rng.random_range(0..=max_order - (cuts + 2));
        while spare > 0 {
            let k = rng.random_range(0..blocks);
            if sizes[k] < 4 {
                sizes[k] += 1;
            }
            spare -= 1;
        }
        let mut n = 0;
        let mut arcs = Vec::new();
        let mut used_as_cut: Vec<usize> = Vec::new();
        for (k, &s) in sizes.iter().enumerate() {
            let mut members = Vec::new();
            if k > 0 {
                let free: Vec<usize> = (0..n).filter(|v| !used_as_cut.contains(v)).collect();
                let v = *free.choose(rng).expect("a free vertex");
                used_as_cut.push(v);
                members.push(v);
            }
            while members.len() < s {
                members.push(n);
                n += 1;
            }
            block_arcs(rng, &members, 0.4, &mut arcs);
        }
        for v in 0..n {
            if rng.random_bool(0.5) {
                arcs.push(((vid(v), vid(v)), BigInt::from(nonzero(rng, 5))));
            }
        }
        let g = WeightedDigraph::new((0..n).map(vid), arcs).expect("valid");
        if g.is_connected() && decompose(&g).cut_vertices.len() == cuts {
            return g;
        }
    }
}

fn clique_edges(members: &[usize], out: &mut Vec<(VertexId, VertexId)>) {
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            out.push((vid(u), vid(v)));
        }
    }
}

/// Random tree of complete blocks `K_b`, `b` uniform in `2..=5`, each new
/// block glued at a uniformly chosen existing vertex; at most `max_order`
/// vertices.
pub fn random_block_graph(rng: &mut impl Rng, max_order: usize) -> WeightedDigraph<BigInt> {
    let target_blocks = rng.random_range(1..=6);
    let mut n = rng.random_range(2..=5.min(max_order));
    let mut edges = Vec::new();
    clique_edges(&(0..n).collect::<Vec<_>>(), &mut edges);
    for _ in 1..target_blocks {
        let b = rng.random_range(2..=5);
        if n + b - 1 > max_order {
            break;
        }
        let mut members = vec![rng.random_range(0..n)];
        members.extend(n..n + b - 1);
        n += b - 1;
        clique_edges(&members, &mut edges);
    }
    WeightedDigraph::simple((0..n).map(vid), edges).expect("valid")
}

/// `k` cliques of `size` vertices glued in a path, consecutive blocks
/// sharing one vertex; weighted with random nonzero integers and loops.
pub fn clique_chain(rng: &mut impl Rng, k: usize, size: usize) -> WeightedDigraph<BigInt> {
    assert!(size >= 2);
    let n = k * (size - 1) + 1;
    let mut arcs = Vec::new();
    for b in 0..k {
        let members: Vec<usize> = (b * (size - 1)..=(b + 1) * (size - 1)).collect();
        for &u in &members {
            for &v in &members {
                if u != v {
                    arcs.push(((vid(u), vid(v)), BigInt::from(nonzero(rng, 5))));
                }
            }
        }
    }
    for v in 0..n {
        if rng.random_bool(0.5) {
            arcs.push(((vid(v), vid(v)), BigInt::from(nonzero(rng, 5))));
        }
    }
    WeightedDigraph::new((0..n).map(vid), arcs).expect("valid")
}

/// Random digraph of order `n ≥ 3` without cut-vertices: a randomly
/// oriented Hamiltonian cycle plus arcs with probability `density`.
pub fn blockless_digraph(rng: &mut impl Rng, n: usize, density: f64) -> WeightedDigraph<BigInt> {
    let mut arcs = Vec::new();
    block_arcs(rng, &(0..n).collect::<Vec<_>>(), density, &mut arcs);
    for v in 0..n {
        if rng.random_bool(0.6) {
            arcs.push(((vid(v), vid(v)), BigInt::from(nonzero(rng, 5))));
        }
    }
    WeightedDigraph::new((0..n).map(vid), arcs).expect("valid")
}

/// Same as [`blockless_digraph`] with real weights uniform in `[-3, 3)`.
pub fn blockless_float_digraph(rng: &mut impl Rng, n: usize, density: f64) -> WeightedDigraph<Complex64> {
    let g = blockless_digraph(rng, n, density);
    let arcs: Vec<_> = g
        .edges()
        .map(|(u, v, _)| ((u, v), Complex64::new(rng.random_range(-3.0..3.0), 0.0)))
        .collect();
    WeightedDigraph::new(g.vertices().iter().copied(), arcs).expect("valid")
}

/// Cut-free digraph whose leading principal submatrix `A1` (all but the
/// last vertex) is singular: its first two rows agree on `A1`'s columns.
/// `d_zero` selects whether the last diagonal entry is zero (case 3) or
/// nonzero (case 2).
pub fn singular_leading_digraph(rng: &mut impl Rng, n: usize, d_zero: bool) -> WeightedDigraph<BigInt> {
    assert!(n >= 3);
    loop {
        let g = blockless_digraph(rng, n, 0.5);
        let mut a = g.to_matrix();
        for j in 0..n - 1 {
            let w = a.get(1, j).clone();
            a.set(0, j, w);
        }
        let d = if d_zero { BigInt::zero() } else { BigInt::from(nonzero(rng, 5)) };
        a.set(n - 1, n - 1, d);
        let h = WeightedDigraph::from_matrix(&a);
        if h.is_connected() && decompose(&h).cut_vertices.is_empty() {
            return h;
        }
    }
}

/// Simple connected graph on `n` vertices: a random tree plus random extra edges.
pub fn random_connected_simple(rng: &mut impl Rng, n: usize, extra: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random tree on `n` vertices as an edge list.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (rng.random_range(0..v), v)).collect()
}

fn simple_from(n: usize, edges: &[(usize, usize)]) -> WeightedDigraph<BigInt> {
    WeightedDigraph::simple((0..n).map(vid), edges.iter().map(|&(u, v)| (vid(u), vid(v)))).expect("valid")
}

/// Glue `piece` (vertices `0..m`, vertex 0 being the attachment point) onto
/// vertex `at` of a graph with `n` vertices; returns the new vertex count.
fn glue(edges: &mut Vec<(usize, usize)>, n: usize, at: usize, m: usize, piece: &[(usize, usize)]) -> usize {
    let map = |x: usize| if x == 0 { at } else { n + x - 1 };
    edges.extend(piece.iter().map(|&(u, v)| (map(u), map(v))));
    n + m - 1
}

fn cycle(m: usize) -> Vec<(usize, usize)> {
    (0..m).map(|i| (i, (i + 1) % m)).collect()
}

fn is_singular(g: &WeightedDigraph<BigInt>) -> bool {
    leibniz_det(&g.to_matrix()).map(|d| d.is_zero()).unwrap_or(false)
}

/// Simple graphs built to satisfy one singularity condition (1 to 4), at
/// most ten vertices each so the permutation-sum oracle applies.
pub fn singular_instance(rng: &mut impl Rng, condition: u8) -> WeightedDigraph<BigInt> {
    let base_n = rng.random_range(2..=3);
    let mut edges = random_connected_simple(rng, base_n, 0.5);
    let at = rng.random_range(0..base_n);
    let n = match condition {
        1 => glue(&mut edges, base_n, at, 4, &cycle(4)),
        2 => {
            // Keep the order at most ten.
            let a = if base_n == 2 { *[4usize, 6].choose(rng).unwrap() } else { 4 };
            let b = 4;
            let n = glue(&mut edges, base_n, at, a, &cycle(a));
            glue(&mut edges, n, at, b, &cycle(b))
        }
        3 => {
            // Even-order tree without a perfect matching.
            let (m, tree) = loop {
                let m = *[4usize, 6].choose(rng).unwrap();
                let t = random_tree(rng, m);
                if is_singular(&simple_from(m, &t)) {
                    break (m, t);
                }
            };
            glue(&mut edges, base_n, at, m, &tree)
        }
        4 => {
            if rng.random_bool(0.5) {
                // Two even-order trees hanging at one vertex of the base.
                let m1 = *[2usize, 4].choose(rng).unwrap();
                let m2 = *[2usize, 4].choose(rng).unwrap();
                let t1 = random_tree(rng, m1);
                let t2 = random_tree(rng, m2);
                let n = glue(&mut edges, base_n, at, m1, &t1);
                glue(&mut edges, n, at, m2, &t2)
            } else {
                // Two odd-order trees forming the whole graph.
                edges.clear();
                let m1 = *[3usize, 5].choose(rng).unwrap();
                let m2 = *[3usize, 5].choose(rng).unwrap();
                let t1 = random_tree(rng, m1);
                let t2 = random_tree(rng, m2);
                let n = glue(&mut edges, 1, 0, m1, &t1);
                glue(&mut edges, n, 0, m2, &t2)
            }
        }
        _ => panic!("conditions are numbered 1 to 4"),
    };
    simple_from(n, &edges)
}

/// All labelled simple graphs on `n` vertices, as edge lists (`n ≤ 6`).
pub fn all_simple_graphs(n: usize) -> impl Iterator<Item = WeightedDigraph<BigInt>> {
    assert!(n <= 6);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let e: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        simple_from(n, &e)
    })
}

/// Random connected simple graph on `n` vertices without cut-vertices.
pub fn random_two_connected(rng: &mut impl Rng, n: usize, extra: f64) -> WeightedDigraph<BigInt> {
    loop {
        let mut e = cycle(n);
        for u in 0..n {
            for v in u + 1..n {
                if !e.contains(&(u, v)) && !e.contains(&(v, u)) && rng.random_bool(extra) {
                    e.push((u, v));
                }
            }
        }
        let g = simple_from(n, &e);
        if decompose(&g).cut_vertices.is_empty() {
            return g;
        }
    }
}
