//! Determinants of simple block graphs (every block a complete graph).
//!
//! With blocks `B_1..B_k` and `n` vertices,
//! `det(A) = (−1)^{n−k} Σ ∏ (α_i − 1)`, summed over the non-negative
//! k-tuples with `Σ α_i = n` and `Σ_{i∈S} α_i ≤ |V(G_S)|` for every nonempty
//! block set `S`, where `G_S` is the union of the blocks in `S`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::blocks::{decompose, BlockDecomposition};
use crate::bpartition::enumerate_bpartitions;
use crate::digraph::{VertexId, WeightedDigraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Above this many blocks the subset condition is not enumerated; tuples are
/// read off the B-partitions instead.
pub const SUBSET_CHECK_LIMIT: usize = 15;

/// Sizes `α_1..α_k`, one per block in decomposition order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct KTuple {
    pub alphas: Vec<usize>,
}

impl KTuple {
    /// `∏ (α_i − 1)`.
    pub fn product(&self) -> BigInt {
        self.alphas
            .iter()
            .map(|&a| BigInt::from(a as i64 - 1))
            .product()
    }
}

pub fn is_block_graph<T: Scalar>(g: &WeightedDigraph<T>) -> bool {
    g.check_simple().is_ok() && incomplete_block(g, &decompose(g)).is_none()
}

fn incomplete_block<T: Scalar>(g: &WeightedDigraph<T>, d: &BlockDecomposition) -> Option<Vec<VertexId>> {
    d.blocks
        .iter()
        .find(|b| {
            b.iter()
                .enumerate()
                .any(|(i, &u)| b[i + 1..].iter().any(|&v| g.weight(u, v).is_none()))
        })
        .cloned()
}

fn check<T: Scalar>(g: &WeightedDigraph<T>) -> Result<BlockDecomposition> {
    g.check_simple()?;
    let d = decompose(g);
    if let Some(b) = incomplete_block(g, &d) {
        return Err(Error::NotBlockGraph(b));
    }
    Ok(d)
}

/// Every tuple meeting both conditions, in lexicographic order.
pub fn feasible_tuples<T: Scalar>(g: &WeightedDigraph<T>) -> Result<Vec<KTuple>> {
    let d = check(g)?;
    Ok(tuples_for(&d, g.order()))
}

fn tuples_for(d: &BlockDecomposition, n: usize) -> Vec<KTuple> {
    if d.block_count() <= SUBSET_CHECK_LIMIT {
        backtrack(d, n)
    } else {
        from_bpartitions(d)
    }
}

fn backtrack(d: &BlockDecomposition, n: usize) -> Vec<KTuple> {
    let k = d.block_count();
    // union_size[mask] = |V(G_S)| for the block set `mask`.
    let union_size: Vec<usize> = (0usize..1 << k)
        .map(|mask| {
            let vs: BTreeSet<_> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .flat_map(|i| d.blocks[i].iter().copied())
                .collect();
            vs.len()
        })
        .collect();
    // Largest sum still reachable by the blocks after position i.
    let mut tail = vec![0usize; k + 1];
    for i in (0..k).rev() {
        tail[i] = tail[i + 1] + d.blocks[i].len();
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        k: usize,
        n: usize,
        sums: &mut Vec<usize>,
        alphas: &mut Vec<usize>,
        union_size: &[usize],
        tail: &[usize],
        out: &mut Vec<KTuple>,
    ) {
        let used = sums[(1 << i) - 1];
        if i == k {
            if used == n {
                out.push(KTuple { alphas: alphas.clone() });
            }
            return;
        }
        if used + tail[i] < n {
            return;
        }
        let bit = 1usize << i;
        'choice: for a in 0..=(n - used) {
            // Every subset containing block i, restricted to the prefix.
            for rest in 0..bit {
                let s = sums[rest] + a;
                if s > union_size[rest | bit] {
                    break 'choice;
                }
                sums[rest | bit] = s;
            }
            alphas.push(a);
            go(i + 1, k, n, sums, alphas, union_size, tail, out);
            alphas.pop();
        }
    }

    let mut sums = vec![0usize; 1 << k];
    let mut out = Vec::new();
    go(0, k, n, &mut sums, &mut Vec::new(), &union_size, &tail, &mut out);
    out
}

/// The part sizes of every B-partition, which are exactly the feasible tuples.
fn from_bpartitions(d: &BlockDecomposition) -> Vec<KTuple> {
    let set: BTreeSet<KTuple> = enumerate_bpartitions(d)
        .map(|p| KTuple {
            alphas: p.parts.iter().map(Vec::len).collect(),
        })
        .collect();
    set.into_iter().collect()
}

/// Part sizes of the B-partitions, one tuple per partition (duplicates kept).
pub fn bpartition_tuples<T: Scalar>(g: &WeightedDigraph<T>) -> Vec<KTuple> {
    enumerate_bpartitions(&decompose(g))
        .map(|p| KTuple {
            alphas: p.parts.iter().map(Vec::len).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockGraphDet {
    pub order: usize,
    pub blocks: usize,
    pub tuples: Vec<KTuple>,
    #[serde(serialize_with = "big_as_string")]
    pub det: BigInt,
}

fn big_as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Determinant together with the tuples that produced it.
pub fn explain<T: Scalar>(g: &WeightedDigraph<T>) -> Result<BlockGraphDet> {
    let d = check(g)?;
    let n = g.order();
    let k = d.block_count();
    let tuples = tuples_for(&d, n);
    let sum: BigInt = tuples.iter().map(KTuple::product).sum();
    let det = if (n - k) % 2 == 0 { sum } else { -sum };
    Ok(BlockGraphDet {
        order: n,
        blocks: k,
        tuples,
        det,
    })
}

pub fn det_block_graph<T: Scalar>(g: &WeightedDigraph<T>) -> Result<BigInt> {
    Ok(explain(g)?.det)
}

/// `det(K_n) = (−1)^{n−1}(n − 1)`.
pub fn complete_graph_det(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let v = BigInt::from(n - 1);
    if (n - 1) % 2 == 0 {
        v
    } else {
        -v
    }
}
