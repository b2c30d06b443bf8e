//! Reference matrices used throughout the tests and the CLI demos.

use num_bigint::BigInt;

use crate::digraph::{VertexId, WeightedDigraph};
use crate::matrix::SquareMatrix;

/// 7×7 integer matrix with cut-vertices v2 and v6 (cut-entries 5 and −4).
pub fn m1() -> SquareMatrix<BigInt> {
    SquareMatrix::from_i64_rows(&[
        &[0, 3, 2, 0, 0, 0, 0],
        &[-7, 5, -1, 1, -8, 0, 0],
        &[2, -1, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, -3, 0],
        &[0, 12, 0, 0, 0, 1, 0],
        &[0, 0, 0, 1, 1, -4, 2],
        &[0, 0, 0, 0, 0, 20, 3],
    ])
    .expect("square")
}

/// `m1` extended by an eighth vertex hanging off v6, giving v6 cut-index 3.
pub fn m2() -> SquareMatrix<BigInt> {
    SquareMatrix::from_i64_rows(&[
        &[0, 3, 2, 0, 0, 0, 0, 0],
        &[-7, 5, -1, 1, -8, 0, 0, 0],
        &[2, -1, 0, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, -3, 0, 0],
        &[0, 12, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 1, -4, 2, -2],
        &[0, 0, 0, 0, 0, 20, 3, 0],
        &[0, 0, 0, 0, 0, -2, 0, 10],
    ])
    .expect("square")
}

/// Adjacency digraph of the complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> WeightedDigraph<BigInt> {
    let vs: Vec<_> = (0..n).map(VertexId::from_index).collect();
    let edges: Vec<_> = vs
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v)))
        .collect();
    WeightedDigraph::simple(vs.clone(), edges).expect("valid")
}

/// Cycle `v_{start}, ..., v_{start+n-1}` as undirected edges.
pub fn cycle_edges(start: u32, n: u32) -> Vec<(VertexId, VertexId)> {
    (0..n)
        .map(|i| (VertexId(start + i), VertexId(start + (i + 1) % n)))
        .collect()
}

/// Path `v_{start}, ..., v_{start+n-1}` as undirected edges.
pub fn path_edges(start: u32, n: u32) -> Vec<(VertexId, VertexId)> {
    (0..n.saturating_sub(1))
        .map(|i| (VertexId(start + i), VertexId(start + i + 1)))
        .collect()
}

/// Order-6 cut-free graph where the unique max-degree vertex v3 (degree 4)
/// leaves one block when deleted, while deleting v1 (degree 3) leaves two.
pub fn heuristic_counterexample() -> WeightedDigraph<BigInt> {
    let edges = [(1, 3), (1, 5), (1, 6), (2, 3), (2, 4), (2, 6), (3, 4), (3, 5), (4, 5)];
    WeightedDigraph::simple(
        (1..=6).map(VertexId),
        edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))),
    )
    .expect("valid")
}
