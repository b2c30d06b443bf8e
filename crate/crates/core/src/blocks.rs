//! Blocks and cut-vertices.
//!
//! Connectivity is that of the underlying undirected graph: `u` and `v` are
//! adjacent when `(u,v)` or `(v,u)` is an edge, and loops are ignored. A
//! bridge is a two-vertex block and an isolated vertex a one-vertex block, so
//! the blocks always cover `V(G)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::digraph::{VertexId, WeightedDigraph};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, ordered lexicographically (hence by smallest id).
    pub blocks: Vec<Vec<VertexId>>,
    pub cut_vertices: Vec<VertexId>,
    pub cut_index: BTreeMap<VertexId, usize>,
    /// Cut-vertices contained in each block.
    pub incidence: Vec<Vec<VertexId>>,
    /// Blocks containing each cut-vertex, ascending.
    pub blocks_of: BTreeMap<VertexId, Vec<usize>>,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_cut_vertex(&self, v: VertexId) -> bool {
        self.cut_index.contains_key(&v)
    }

    /// Blocks with at most one cut-vertex of the whole digraph.
    pub fn pendant_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.incidence[i].len() <= 1)
            .collect()
    }

    /// Number of B-partitions: the product of all cut-indices.
    pub fn bpartition_count(&self) -> u128 {
        self.cut_index.values().map(|&d| d as u128).product()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let label = |v: &VertexId| v.0;
        serde_json::json!({
            "blocks": self.blocks.iter().map(|b| b.iter().map(label).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "cut_vertices": self.cut_vertices.iter().map(label).collect::<Vec<_>>(),
            "cut_index": self.cut_index.iter().map(|(v, d)| serde_json::json!({"vertex": v.0, "cut_index": d})).collect::<Vec<_>>(),
            "pendant_blocks": self.pendant_blocks(),
        })
    }
}

pub fn decompose<T: Scalar>(g: &WeightedDigraph<T>) -> BlockDecomposition {
    let adj = g.undirected_adjacency();
    let vs = g.vertices();
    let mut blocks: Vec<Vec<VertexId>> = biconnected_components(&adj)
        .into_iter()
        .map(|b| {
            let mut b: Vec<_> = b.into_iter().map(|i| vs[i]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();

    let mut membership: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            membership.entry(v).or_default().push(i);
        }
    }
    let blocks_of: BTreeMap<_, _> = membership.into_iter().filter(|(_, bs)| bs.len() >= 2).collect();
    let cut_vertices: Vec<_> = blocks_of.keys().copied().collect();
    let cut_index = blocks_of.iter().map(|(&v, bs)| (v, bs.len())).collect();
    let incidence = blocks
        .iter()
        .map(|b| b.iter().copied().filter(|v| blocks_of.contains_key(v)).collect())
        .collect();

    BlockDecomposition {
        blocks,
        cut_vertices,
        cut_index,
        incidence,
        blocks_of,
    }
}

/// Vertex sets of the biconnected components of an undirected simple graph
/// given as adjacency lists. Isolated vertices come out as singletons.
///
/// Iterative Hopcroft–Tarjan: a DFS keeps an edge stack, and when a tree
/// edge `(u, w)` finishes with `low[w] >= disc[u]` the edges down to it form
/// one component.
fn biconnected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        if adj[root].is_empty() {
            disc[root] = time;
            time += 1;
            out.push(vec![root]);
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSET, 0)];
        while let Some(frame) = stack.last_mut() {
            let (u, parent, idx) = *frame;
            if idx < adj[u].len() {
                frame.2 += 1;
                let w = adj[u][idx];
                if disc[w] == UNSET {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((u, w));
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.push(a);
                            comp.push(b);
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comp.dedup();
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}
