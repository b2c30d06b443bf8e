//! Structural sufficient conditions for a simple graph to be singular.
//!
//! A tree *hangs* at a cut-vertex `v` when it is induced, contains `v`, and
//! removing `v` leaves whole components of `G∖v`. That is what lets the
//! subdigraph recurrence at `v` split the determinant into products with a
//! singular factor in every term.

use serde::Serialize;

use crate::blocks::{decompose, BlockDecomposition};
use crate::digraph::{VertexId, WeightedDigraph};
use crate::error::Result;
use crate::expand::{scalar_value, Kind};
use crate::scalar::Scalar;

/// Components beyond this many at one cut-vertex are not searched for
/// singular hanging trees (the search is over subsets).
const HANGING_SUBSET_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// A pendant block is a cycle whose length is a multiple of four.
    PendantCycleFourR = 1,
    /// Two pendant even cycles share their cut-vertex.
    TwoPendantEvenCycles = 2,
    /// A singular tree of even order hangs at a cut-vertex.
    SingularEvenTree = 3,
    /// Two trees of orders with equal parity hang at one cut-vertex.
    TwoTreesSameParity = 4,
}

impl Condition {
    pub fn id(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: Condition,
    pub cut_vertex: VertexId,
    /// Vertex sets of the cycles or trees involved.
    pub parts: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub witnesses: Vec<Witness>,
}

impl SingularityReport {
    /// Condition ids that fired, ascending and without repeats.
    pub fn conditions(&self) -> Vec<u8> {
        let mut ids: Vec<u8> = self.witnesses.iter().map(|w| w.condition.id()).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn is_singular(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

pub fn singularity_conditions<T: Scalar>(g: &WeightedDigraph<T>) -> Result<Vec<u8>> {
    Ok(singularity_report(g)?.conditions())
}

pub fn singularity_report<T: Scalar>(g: &WeightedDigraph<T>) -> Result<SingularityReport> {
    g.check_simple()?;
    let d = decompose(g);
    let mut witnesses = Vec::new();
    pendant_cycles(g, &d, &mut witnesses);
    for &v in &d.cut_vertices {
        hanging_trees(g, v, &mut witnesses);
    }
    Ok(SingularityReport { witnesses })
}

fn is_cycle<T: Scalar>(g: &WeightedDigraph<T>, block: &[VertexId]) -> bool {
    let h = g.induced_unchecked(block);
    block.len() >= 3 && block.iter().all(|&u| h.degree(u) == 2)
}

fn pendant_cycles<T: Scalar>(g: &WeightedDigraph<T>, d: &BlockDecomposition, out: &mut Vec<Witness>) {
    for &v in &d.cut_vertices {
        let even_cycles: Vec<&Vec<VertexId>> = d.blocks_of[&v]
            .iter()
            .filter(|&&b| d.incidence[b].len() == 1 && is_cycle(g, &d.blocks[b]))
            .map(|&b| &d.blocks[b])
            .filter(|b| b.len() % 2 == 0)
            .collect();
        for c in &even_cycles {
            if c.len() % 4 == 0 {
                out.push(Witness {
                    condition: Condition::PendantCycleFourR,
                    cut_vertex: v,
                    parts: vec![c.to_vec()],
                });
            }
        }
        if even_cycles.len() >= 2 {
            out.push(Witness {
                condition: Condition::TwoPendantEvenCycles,
                cut_vertex: v,
                parts: vec![even_cycles[0].clone(), even_cycles[1].clone()],
            });
        }
    }
}

/// Components `C` of `G∖v` with `C ∪ {v}` inducing a tree.
fn tree_components<T: Scalar>(g: &WeightedDigraph<T>, v: VertexId) -> Vec<Vec<VertexId>> {
    let nv = g.neighbors(v);
    g.without(&[v])
        .component_sets()
        .into_iter()
        .filter(|c| {
            let h = g.induced_unchecked(c);
            let attached = c.iter().filter(|x| nv.contains(x)).count();
            h.edge_count() == 2 * (c.len() - 1) && attached == 1
        })
        .collect()
}

fn hanging_trees<T: Scalar>(g: &WeightedDigraph<T>, v: VertexId, out: &mut Vec<Witness>) {
    let comps = tree_components(g, v);
    if comps.is_empty() {
        return;
    }
    let with_v = |cs: &[&Vec<VertexId>]| {
        let mut s: Vec<VertexId> = cs.iter().flat_map(|c| c.iter().copied()).collect();
        s.push(v);
        s.sort_unstable();
        s
    };

    // Condition 3: some union of tree components plus v is an even-order
    // singular tree.
    if comps.len() <= HANGING_SUBSET_LIMIT {
        for mask in 1u32..(1 << comps.len()) {
            let chosen: Vec<&Vec<VertexId>> = (0..comps.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &comps[i])
                .collect();
            let tree = with_v(&chosen);
            if tree.len() % 2 == 0 && scalar_value(&g.induced_unchecked(&tree), Kind::Det).is_zero() {
                out.push(Witness {
                    condition: Condition::SingularEvenTree,
                    cut_vertex: v,
                    parts: vec![tree],
                });
                break;
            }
        }
    }

    // Condition 4, even orders: two trees whose parts away from v have odd
    // order. Both the union and the union minus v then contain an odd tree
    // component or have odd order themselves.
    let odd: Vec<&Vec<VertexId>> = comps.iter().filter(|c| c.len() % 2 == 1).collect();
    if odd.len() >= 2 {
        out.push(Witness {
            condition: Condition::TwoTreesSameParity,
            cut_vertex: v,
            parts: vec![with_v(&odd[..1]), with_v(&odd[1..2])],
        });
        return;
    }

    // Condition 4, odd orders: only sound when the two trees make up the
    // whole graph, which is then a tree of odd order. Here no component is
    // odd (that case returned above), so any split into two groups works.
    let all = g.without(&[v]).component_sets();
    if all.len() != comps.len() || comps.len() < 2 || g.order() % 2 == 0 {
        return;
    }
    let first: Vec<&Vec<VertexId>> = comps[..1].iter().collect();
    let rest: Vec<&Vec<VertexId>> = comps[1..].iter().collect();
    out.push(Witness {
        condition: Condition::TwoTreesSameParity,
        cut_vertex: v,
        parts: vec![with_v(&first), with_v(&rest)],
    });
}
