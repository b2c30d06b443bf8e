//! B-partitions: every cut-vertex is handed to exactly one of its blocks,
//! and each block keeps its own vertices minus the cut-vertices given away.
//!
//! Enumeration also supports a set of *removed* cut-vertices, which are
//! dropped from every block. The blocks are always those of the digraph the
//! decomposition was computed for, never re-decomposed after removal.

use std::collections::BTreeMap;

use crate::blocks::BlockDecomposition;
use crate::digraph::{VertexId, WeightedDigraph};
use crate::expand::{scalar_value, shifted_polynomial, Kind};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPartition {
    /// Chosen block index for every cut-vertex that was not removed.
    pub assignment: BTreeMap<VertexId, usize>,
    /// One vertex set per block, in block order; possibly empty.
    pub parts: Vec<Vec<VertexId>>,
}

impl BPartition {
    /// Human-readable summand such as `φ[1,2,3]φ[4,5]φ[7]`; empty parts are
    /// unit factors and are omitted.
    pub fn label(&self, kind: Kind) -> String {
        let symbol = match kind {
            Kind::Det => "φ",
            Kind::Per => "ψ",
        };
        let s: String = self
            .parts
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| {
                let ids: Vec<String> = p.iter().map(|v| v.0.to_string()).collect();
                format!("{symbol}[{}]", ids.join(","))
            })
            .collect();
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "assignment": self.assignment.iter().map(|(v, b)| serde_json::json!({"vertex": v.0, "block": b})).collect::<Vec<_>>(),
            "parts": self.parts.iter().map(|p| p.iter().map(|v| v.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Streaming enumeration in lexicographic order of the cut-vertex choices,
/// the smallest cut-vertex being the most significant digit.
#[derive(Clone, Debug)]
pub struct BPartitions<'a> {
    decomp: &'a BlockDecomposition,
    removed: Vec<VertexId>,
    choosers: Vec<(VertexId, &'a [usize])>,
    total: u128,
    next: u128,
}

impl<'a> BPartitions<'a> {
    pub fn new(decomp: &'a BlockDecomposition, removed: &[VertexId]) -> Self {
        let choosers: Vec<_> = decomp
            .blocks_of
            .iter()
            .filter(|(v, _)| !removed.contains(v))
            .map(|(&v, bs)| (v, bs.as_slice()))
            .collect();
        let total = choosers.iter().map(|(_, bs)| bs.len() as u128).product();
        BPartitions {
            decomp,
            removed: removed.to_vec(),
            choosers,
            total,
            next: 0,
        }
    }

    /// `∏ d_i` over the cut-vertices that were not removed.
    pub fn total(&self) -> u128 {
        self.total
    }

    /// The partition at position `index` of the enumeration order, so the
    /// index space can be split between workers.
    pub fn partition_at(&self, mut index: u128) -> BPartition {
        assert!(index < self.total, "partition index out of range");
        let mut assignment = BTreeMap::new();
        for &(v, bs) in self.choosers.iter().rev() {
            let radix = bs.len() as u128;
            assignment.insert(v, bs[(index % radix) as usize]);
            index /= radix;
        }
        self.build(assignment)
    }

    fn build(&self, assignment: BTreeMap<VertexId, usize>) -> BPartition {
        let parts = self
            .decomp
            .blocks
            .iter()
            .enumerate()
            .map(|(i, block)| {
                block
                    .iter()
                    .copied()
                    .filter(|v| {
                        if self.removed.contains(v) {
                            return false;
                        }
                        assignment.get(v).map_or(true, |&b| b == i)
                    })
                    .collect()
            })
            .collect();
        BPartition { assignment, parts }
    }
}

impl Iterator for BPartitions<'_> {
    type Item = BPartition;

    fn next(&mut self) -> Option<BPartition> {
        if self.next >= self.total {
            return None;
        }
        let p = self.partition_at(self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.total - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// All B-partitions of the digraph the decomposition belongs to.
pub fn enumerate_bpartitions(decomp: &BlockDecomposition) -> BPartitions<'_> {
    BPartitions::new(decomp, &[])
}

/// φ-summand (`Kind::Det`) or ψ-summand (`Kind::Per`): the product of the
/// parts' polynomials, null parts contributing 1.
pub fn poly_summand<T: Scalar>(p: &BPartition, g: &WeightedDigraph<T>, kind: Kind) -> Polynomial<T> {
    p.parts
        .iter()
        .filter(|part| !part.is_empty())
        .map(|part| shifted_polynomial(&g.induced_unchecked(part), kind))
        .product()
}

pub fn phi_summand<T: Scalar>(p: &BPartition, g: &WeightedDigraph<T>) -> Polynomial<T> {
    poly_summand(p, g, Kind::Det)
}

pub fn psi_summand<T: Scalar>(p: &BPartition, g: &WeightedDigraph<T>) -> Polynomial<T> {
    poly_summand(p, g, Kind::Per)
}

/// det-summand or per-summand: the product of the parts' determinants
/// (permanents), with no λ shift.
pub fn scalar_summand<T: Scalar>(p: &BPartition, g: &WeightedDigraph<T>, kind: Kind) -> T {
    p.parts
        .iter()
        .filter(|part| !part.is_empty())
        .fold(T::one(), |acc, part| acc * scalar_value(&g.induced_unchecked(part), kind))
}
