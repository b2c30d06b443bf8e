//! Weighted digraphs: the graph image of a square matrix.
//!
//! Vertex `v_i` stands for row/column `i` (1-based) of the matrix; an entry
//! `a_uv != 0` becomes the edge `(u, v)` with weight `a_uv`, and a nonzero
//! diagonal entry becomes a loop. Vertex ids are stable labels, so induced
//! subdigraphs keep the ids of the digraph they came from.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{CoefficientMode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    /// Vertex for the 0-based matrix index `i`.
    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32 + 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Shorthand for a list of vertex ids from raw labels.
pub fn vids(labels: &[u32]) -> Vec<VertexId> {
    labels.iter().map(|&l| VertexId(l)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDigraph<T> {
    /// Sorted, unique.
    vertices: Vec<VertexId>,
    /// Never holds a zero weight.
    edges: BTreeMap<(VertexId, VertexId), T>,
}

impl<T: Scalar> WeightedDigraph<T> {
    pub fn null() -> Self {
        WeightedDigraph {
            vertices: Vec::new(),
            edges: BTreeMap::new(),
        }
    }

    /// Build from explicit vertices and weighted edges. Zero weights are
    /// dropped; duplicate vertices or dangling endpoints are rejected.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = ((VertexId, VertexId), T)>,
    ) -> Result<Self> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        let n = vs.len();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != n {
            return Err(Error::InvalidDigraph("duplicate vertex id".into()));
        }
        let mut map = BTreeMap::new();
        for ((u, v), w) in edges {
            for x in [u, v] {
                if vs.binary_search(&x).is_err() {
                    return Err(Error::UnknownVertex(x));
                }
            }
            if w.is_zero() {
                continue;
            }
            if map.insert((u, v), w).is_some() {
                return Err(Error::InvalidDigraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(WeightedDigraph {
            vertices: vs,
            edges: map,
        })
    }

    /// Simple graph on the given vertices: each undirected edge becomes two
    /// directed edges of weight 1.
    pub fn simple(
        vertices: impl IntoIterator<Item = VertexId>,
        undirected: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let edges: Vec<_> = undirected
            .into_iter()
            .flat_map(|(u, v)| [((u, v), T::one()), ((v, u), T::one())])
            .collect();
        Self::new(vertices, edges)
    }

    pub fn from_matrix(a: &SquareMatrix<T>) -> Self {
        let n = a.order();
        let vertices = (0..n).map(VertexId::from_index).collect();
        let mut edges = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let w = a.get(i, j);
                if !w.is_zero() {
                    edges.insert((VertexId::from_index(i), VertexId::from_index(j)), w.clone());
                }
            }
        }
        WeightedDigraph { vertices, edges }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Ok(Self::from_matrix(&SquareMatrix::from_rows(rows)?))
    }

    /// Adjacency matrix in label-sorted vertex order.
    pub fn to_matrix(&self) -> SquareMatrix<T> {
        let mut a = SquareMatrix::zeros(self.order());
        for ((u, v), w) in &self.edges {
            a.set(self.position(*u), self.position(*v), w.clone());
        }
        a
    }

    pub fn mode(&self) -> CoefficientMode {
        T::MODE
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_null(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` in the label-sorted vertex order. Panics if absent.
    pub fn position(&self, v: VertexId) -> usize {
        self.vertices
            .binary_search(&v)
            .unwrap_or_else(|_| panic!("{v} is not a vertex"))
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, &T)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<&T> {
        self.edges.get(&(u, v))
    }

    /// Loop weight at `v`, zero when there is no loop.
    pub fn loop_weight(&self, v: VertexId) -> T {
        self.weight(v, v).cloned().unwrap_or_else(T::zero)
    }

    pub fn has_loop(&self, v: VertexId) -> bool {
        self.edges.contains_key(&(v, v))
    }

    /// Neighbours in the underlying undirected graph, loops excluded.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, false) => Some(b),
                (false, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Underlying undirected adjacency lists, indexed by vertex position.
    pub fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order()];
        for &(u, v) in self.edges.keys() {
            if u != v {
                let (i, j) = (self.position(u), self.position(v));
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn induced_subdigraph(&self, subset: &[VertexId]) -> Result<Self> {
        if let Some(&v) = subset.iter().find(|&&v| !self.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.induced_unchecked(subset))
    }

    /// Induced subdigraph on a subset already known to lie in `V(G)`.
    pub(crate) fn induced_unchecked(&self, subset: &[VertexId]) -> Self {
        let mut vertices = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let edges = self
            .edges
            .iter()
            .filter(|((u, v), _)| {
                vertices.binary_search(u).is_ok() && vertices.binary_search(v).is_ok()
            })
            .map(|(&k, w)| (k, w.clone()))
            .collect();
        WeightedDigraph { vertices, edges }
    }

    /// `G \ S`: induced subdigraph on the vertices not in `removed`.
    pub fn without(&self, removed: &[VertexId]) -> Self {
        let keep: Vec<_> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| !removed.contains(v))
            .collect();
        self.induced_unchecked(&keep)
    }

    /// Vertex sets of the weakly connected components, ordered by smallest id.
    pub fn component_sets(&self) -> Vec<Vec<VertexId>> {
        let adj = self.undirected_adjacency();
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(self.vertices[x]);
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Self> {
        self.component_sets()
            .iter()
            .map(|c| self.induced_unchecked(c))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() <= 1
    }

    /// Simple graph: symmetric, loop-free, all weights one.
    pub fn check_simple(&self) -> Result<()> {
        for (u, v, w) in self.edges() {
            if u == v {
                return Err(Error::NotSimple(format!("loop at {u}")));
            }
            if *w != T::one() {
                return Err(Error::NotSimple(format!("edge ({u}, {v}) has weight {w:?}")));
            }
            if self.weight(v, u).is_none() {
                return Err(Error::NotSimple(format!("edge ({u}, {v}) has no reverse")));
            }
        }
        Ok(())
    }

    pub fn map_weights<U: Scalar>(&self, f: impl Fn(&T) -> U) -> WeightedDigraph<U> {
        WeightedDigraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|(&k, w)| (k, f(w)))
                .filter(|(_, w)| !w.is_zero())
                .collect(),
        }
    }

    /// Relabel vertices; `f` must be injective on `V(G)`.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Self> {
        Self::new(
            self.vertices.iter().map(|&v| f(v)),
            self.edges.iter().map(|(&(u, v), w)| ((f(u), f(v)), w.clone())),
        )
    }
}
