//! Characteristic and permanent polynomials from the block structure.
//!
//! Two independent routes compute `φ(G) = det(A − λI)` and
//! `ψ(G) = per(A − λI)`:
//!
//! * the **cut-vertex-removal sum** ([`theorem_expansion`]): for every set
//!   `R` of removed cut-vertices, the multiplier `∏_{t∈R} (λ − α_t)(d_t − 1)`
//!   times the sum of summands over the B-partitions left once `R` is gone;
//! * the **pendant-block recurrence** ([`recursive_polynomial`]): peel a
//!   pendant block `B` with cut-vertex `v` using
//!   `φ(G) = φ(B)φ(G∖B) + φ(B∖v)φ(G∖(B∖v)) + (λ − α)φ(B∖v)φ(G∖B)`.
//!
//! Cut-vertex-free pieces are expanded directly by [`crate::expand`]. The
//! diagonal is read as `a_vv − λ` there, and the removal multipliers use the
//! raw loop weight `α`, so λ enters exactly once.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::blocks::{decompose, BlockDecomposition};
use crate::bpartition::{BPartition, BPartitions};
use crate::digraph::{VertexId, WeightedDigraph};
use crate::error::{Error, Result};
use crate::expand::{scalar_value, shifted_polynomial, Kind};
use crate::oracle;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Theorem,
    Recursive,
    Oracle,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Theorem => "theorem",
            Engine::Recursive => "recursive",
            Engine::Oracle => "oracle",
        }
    }
}

/// One removed-set term of the cut-vertex-removal sum.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremTerm<T> {
    /// Removed cut-vertices, ascending.
    pub removed: Vec<VertexId>,
    pub multiplier: Polynomial<T>,
    /// Factored form such as `2(λ+4)` or `(λ-5)(λ+4)`.
    pub multiplier_label: String,
    /// Sum of the summands of `partitions`.
    pub summand_total: Polynomial<T>,
    pub partitions: Vec<BPartition>,
}

impl<T: Scalar> TheoremTerm<T> {
    pub fn q(&self) -> usize {
        self.removed.len()
    }

    pub fn value(&self) -> Polynomial<T> {
        &self.multiplier * &self.summand_total
    }

    pub fn to_json(&self, kind: Kind) -> serde_json::Value {
        serde_json::json!({
            "removed": self.removed.iter().map(|v| v.0).collect::<Vec<_>>(),
            "q": self.q(),
            "multiplier": self.multiplier.to_json(),
            "multiplier_label": self.multiplier_label,
            "summand_total": self.summand_total.to_json(),
            "summands": self.partitions.iter().map(|p| {
                let mut j = p.to_json();
                j["label"] = serde_json::Value::String(p.label(kind));
                j
            }).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremExpansion<T> {
    pub kind: Kind,
    pub decomposition: BlockDecomposition,
    /// Ordered by number of removed vertices, then lexicographically.
    pub terms: Vec<TheoremTerm<T>>,
    pub total: Polynomial<T>,
}

impl<T: Scalar> TheoremExpansion<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.name(),
            "terms": self.terms.iter().map(|t| t.to_json(self.kind)).collect::<Vec<_>>(),
            "total": self.total.to_json(),
        })
    }
}

/// Polynomials of every part a block can leave behind, indexed by which of
/// the block's cut-vertices are still present.
struct PartTable<T> {
    cuts: Vec<Vec<VertexId>>,
    polys: Vec<Vec<Polynomial<T>>>,
}

impl<T: Scalar> PartTable<T> {
    fn new(g: &WeightedDigraph<T>, d: &BlockDecomposition, kind: Kind) -> Self {
        let polys = d
            .blocks
            .par_iter()
            .zip(&d.incidence)
            .map(|(block, cuts)| {
                (0..1usize << cuts.len())
                    .map(|mask| {
                        let part: Vec<_> = block
                            .iter()
                            .copied()
                            .filter(|v| match cuts.iter().position(|c| c == v) {
                                Some(k) => mask & (1 << k) != 0,
                                None => true,
                            })
                            .collect();
                        shifted_polynomial(&g.induced_unchecked(&part), kind)
                    })
                    .collect()
            })
            .collect();
        PartTable {
            cuts: d.incidence.clone(),
            polys,
        }
    }

    fn summand(&self, p: &BPartition) -> Polynomial<T> {
        let mut acc = Polynomial::one();
        for (i, cuts) in self.cuts.iter().enumerate() {
            let mask = cuts
                .iter()
                .enumerate()
                .filter(|(_, v)| p.assignment.get(v) == Some(&i))
                .fold(0usize, |m, (k, _)| m | (1 << k));
            let f = &self.polys[i][mask];
            if !f.is_one() {
                acc = &acc * f;
            }
        }
        acc
    }
}

fn multiplier_label<T: Scalar>(g: &WeightedDigraph<T>, d: &BlockDecomposition, removed: &[VertexId]) -> String {
    if removed.is_empty() {
        return "1".into();
    }
    let count: u128 = removed.iter().map(|v| d.cut_index[v] as u128 - 1).product();
    let mut s = if count == 1 { String::new() } else { count.to_string() };
    for &v in removed {
        let alpha = g.loop_weight(v);
        if alpha.is_zero() {
            s.push('λ');
        } else if alpha.is_negative_real() {
            s.push_str(&format!("(λ+{})", (-alpha).label()));
        } else {
            s.push_str(&format!("(λ-{})", alpha.label()));
        }
    }
    s
}

/// Full cut-vertex-removal expansion of `g`, one term per subset of
/// cut-vertices. Cut-indices and loop weights in the multipliers are those of
/// `g` itself, and each residual is partitioned along `g`'s blocks.
///
/// Terms are evaluated in parallel and summed in a fixed order.
pub fn theorem_expansion<T: Scalar>(g: &WeightedDigraph<T>, kind: Kind) -> TheoremExpansion<T> {
    let d = decompose(g);
    let table = PartTable::new(g, &d, kind);
    let cuts = &d.cut_vertices;
    assert!(cuts.len() < 64, "too many cut-vertices");

    let mut masks: Vec<u64> = (0..1u64 << cuts.len()).collect();
    masks.sort_by_cached_key(|&m| (m.count_ones(), (0..64).filter(|k| m & (1 << k) != 0).collect::<Vec<u32>>()));

    let terms: Vec<TheoremTerm<T>> = masks
        .par_iter()
        .map(|&mask| {
            let removed: Vec<VertexId> = cuts
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &v)| v)
                .collect();
            let multiplier: Polynomial<T> = removed
                .iter()
                .map(|&v| {
                    let count = T::from_i64(d.cut_index[&v] as i64 - 1);
                    Polynomial::lambda_minus(g.loop_weight(v)).scale(&count)
                })
                .product();
            let partitions: Vec<BPartition> = BPartitions::new(&d, &removed).collect();
            let summand_total = partitions.iter().map(|p| table.summand(p)).sum();
            TheoremTerm {
                multiplier_label: multiplier_label(g, &d, &removed),
                removed,
                multiplier,
                summand_total,
                partitions,
            }
        })
        .collect();

    let total = terms.iter().map(TheoremTerm::value).sum();
    TheoremExpansion {
        kind,
        decomposition: d,
        terms,
        total,
    }
}

/// Cut-vertex-removal route; disconnected inputs are factored over their
/// components first.
pub fn theorem_polynomial<T: Scalar>(g: &WeightedDigraph<T>, kind: Kind) -> Polynomial<T> {
    g.components()
        .iter()
        .map(|c| {
            if decompose(c).cut_vertices.is_empty() {
                shifted_polynomial(c, kind)
            } else {
                theorem_expansion(c, kind).total
            }
        })
        .product()
}

pub fn charpoly_theorem<T: Scalar>(g: &WeightedDigraph<T>) -> Polynomial<T> {
    theorem_polynomial(g, Kind::Det)
}

pub fn permpoly_theorem<T: Scalar>(g: &WeightedDigraph<T>) -> Polynomial<T> {
    theorem_polynomial(g, Kind::Per)
}

/// Pendant-block recurrence. Sub-results are memoized by vertex set, since
/// every digraph the recursion visits is an induced subdigraph of `g`.
pub fn recursive_polynomial<T: Scalar>(g: &WeightedDigraph<T>, kind: Kind) -> Polynomial<T> {
    let mut memo = HashMap::new();
    recurse(g, g.vertices().to_vec(), kind, &mut memo)
}

fn recurse<T: Scalar>(
    g: &WeightedDigraph<T>,
    set: Vec<VertexId>,
    kind: Kind,
    memo: &mut HashMap<Vec<VertexId>, Polynomial<T>>,
) -> Polynomial<T> {
    if set.is_empty() {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let sub = g.induced_unchecked(&set);
    let comps = sub.component_sets();
    let result = if comps.len() > 1 {
        comps
            .into_iter()
            .map(|c| recurse(g, c, kind, memo))
            .product()
    } else {
        let d = decompose(&sub);
        match d.pendant_blocks().into_iter().find(|&b| d.incidence[b].len() == 1) {
            None => shifted_polynomial(&sub, kind),
            Some(b) => {
                let block = &d.blocks[b];
                let v = d.incidence[b][0];
                let rest: Vec<_> = set.iter().copied().filter(|x| !block.contains(x)).collect();
                let block_minus_v: Vec<_> = block.iter().copied().filter(|&x| x != v).collect();
                let outside: Vec<_> = set
                    .iter()
                    .copied()
                    .filter(|x| !block_minus_v.contains(x))
                    .collect();

                let phi_block = shifted_polynomial(&g.induced_unchecked(block), kind);
                let phi_rest = recurse(g, rest, kind, memo);
                let phi_bv = recurse(g, block_minus_v, kind, memo);
                let phi_outside = recurse(g, outside, kind, memo);
                let shift = Polynomial::lambda_minus(g.loop_weight(v));
                &phi_block * &phi_rest + &phi_bv * &phi_outside + &(&shift * &phi_bv) * &phi_rest
            }
        }
    };
    memo.insert(set, result.clone());
    result
}

pub fn charpoly_recursive<T: Scalar>(g: &WeightedDigraph<T>) -> Polynomial<T> {
    recursive_polynomial(g, Kind::Det)
}

pub fn permpoly_recursive<T: Scalar>(g: &WeightedDigraph<T>) -> Polynomial<T> {
    recursive_polynomial(g, Kind::Per)
}

/// Dispatch on engine; the oracle is limited to order 10.
pub fn polynomial<T: Scalar>(g: &WeightedDigraph<T>, kind: Kind, engine: Engine) -> Result<Polynomial<T>> {
    match engine {
        Engine::Theorem => Ok(theorem_polynomial(g, kind)),
        Engine::Recursive => Ok(recursive_polynomial(g, kind)),
        Engine::Oracle => {
            let a = g.to_matrix();
            match kind {
                Kind::Det => oracle::leibniz_charpoly(&a),
                Kind::Per => oracle::leibniz_permpoly(&a),
            }
        }
    }
}

/// Closed form for a digraph with exactly one cut-vertex `v` shared by
/// blocks `B_1..B_k`:
/// `Σ_i φ(B_i) ∏_{j≠i} φ(B_j∖v) + (k − 1)(λ − α) ∏_i φ(B_i∖v)`.
/// Blocks of other components multiply in unchanged.
pub fn single_cut_polynomial<T: Scalar>(g: &WeightedDigraph<T>, v: VertexId, kind: Kind) -> Result<Polynomial<T>> {
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let d = decompose(g);
    if d.cut_vertices.len() != 1 {
        return Err(Error::CutVertexCount(d.cut_vertices.len()));
    }
    if d.cut_vertices[0] != v {
        return Err(Error::NotACutVertex(v));
    }
    let around = &d.blocks_of[&v];
    let poly_of = |set: &[VertexId]| shifted_polynomial(&g.induced_unchecked(set), kind);
    let minus_v: Vec<Polynomial<T>> = around
        .iter()
        .map(|&b| {
            let s: Vec<_> = d.blocks[b].iter().copied().filter(|&x| x != v).collect();
            poly_of(&s)
        })
        .collect();

    let mut sum = Polynomial::zero();
    for (i, &b) in around.iter().enumerate() {
        let others: Polynomial<T> = minus_v
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .product();
        sum = sum + poly_of(&d.blocks[b]) * others;
    }
    let k = T::from_i64(around.len() as i64 - 1);
    let all_minus: Polynomial<T> = minus_v.into_iter().product();
    sum = sum + Polynomial::lambda_minus(g.loop_weight(v)).scale(&k) * all_minus;

    let elsewhere: Polynomial<T> = (0..d.blocks.len())
        .filter(|b| !around.contains(b))
        .map(|b| poly_of(&d.blocks[b]))
        .product();
    Ok(sum * elsewhere)
}

pub fn charpoly_single_cut<T: Scalar>(g: &WeightedDigraph<T>, v: VertexId) -> Result<Polynomial<T>> {
    single_cut_polynomial(g, v, Kind::Det)
}

/// Recurrence around an induced subdigraph `H ∋ v` where `H∖v` is a union of
/// components of `G∖v`:
/// `φ(G) = φ(H)φ(G∖H) + φ(H∖v)φ(G∖(H∖v)) + (λ − α)φ(H∖v)φ(G∖H)`.
pub fn subdigraph_recurrence<T: Scalar>(
    g: &WeightedDigraph<T>,
    h: &[VertexId],
    v: VertexId,
    kind: Kind,
) -> Result<Polynomial<T>> {
    if let Some(&x) = h.iter().chain(std::iter::once(&v)).find(|&&x| !g.contains(x)) {
        return Err(Error::UnknownVertex(x));
    }
    if !decompose(g).is_cut_vertex(v) {
        return Err(Error::NotACutVertex(v));
    }
    if !h.contains(&v) {
        return Err(Error::Precondition(format!("H must contain {v}")));
    }
    let h_minus_v: Vec<_> = h.iter().copied().filter(|&x| x != v).collect();
    if h_minus_v.is_empty() {
        return Err(Error::Precondition("H∖v is empty".into()));
    }
    for comp in g.without(&[v]).component_sets() {
        let inside = comp.iter().filter(|x| h_minus_v.contains(x)).count();
        if inside != 0 && inside != comp.len() {
            return Err(Error::Precondition(format!(
                "H∖{v} cuts through a component of G∖{v}"
            )));
        }
    }

    let poly = |s: Vec<VertexId>| theorem_polynomial(&g.induced_unchecked(&s), kind);
    let g_minus_h = g.without(h).vertices().to_vec();
    let g_minus_hv = g.without(&h_minus_v).vertices().to_vec();
    let phi_h = poly(h.to_vec());
    let phi_hv = poly(h_minus_v);
    let phi_gh = poly(g_minus_h);
    let phi_ghv = poly(g_minus_hv);
    let shift = Polynomial::lambda_minus(g.loop_weight(v));
    Ok(&phi_h * &phi_gh + &phi_hv * &phi_ghv + shift * phi_hv * phi_gh)
}

/// Sum of det-summands (per-summands) over the B-partitions of `g`, valid
/// when no cut-vertex carries a loop: every removal term then has a zero
/// factor at λ = 0. Returns `None` when a cut-vertex has a loop.
pub fn scalar_fast_path<T: Scalar>(g: &WeightedDigraph<T>, kind: Kind) -> Option<T> {
    let d = decompose(g);
    if d.cut_vertices.iter().any(|&v| g.has_loop(v)) {
        return None;
    }
    let mut table: HashMap<Vec<VertexId>, T> = HashMap::new();
    let mut total = T::zero();
    for p in BPartitions::new(&d, &[]) {
        let mut term = T::one();
        for part in p.parts.iter().filter(|s| !s.is_empty()) {
            let value = table
                .entry(part.clone())
                .or_insert_with(|| scalar_value(&g.induced_unchecked(part), kind));
            term = term * value.clone();
        }
        total = total + term;
    }
    Some(total)
}

/// Determinant via the polynomial route, using the det-summand shortcut when
/// no cut-vertex has a loop.
pub fn determinant<T: Scalar>(g: &WeightedDigraph<T>) -> T {
    scalar_fast_path(g, Kind::Det).unwrap_or_else(|| charpoly_theorem(g).eval_at_zero())
}

pub fn permanent<T: Scalar>(g: &WeightedDigraph<T>) -> T {
    scalar_fast_path(g, Kind::Per).unwrap_or_else(|| permpoly_theorem(g).eval_at_zero())
}

/// Determinant always through `φ(G)` at λ = 0.
pub fn determinant_full<T: Scalar>(g: &WeightedDigraph<T>) -> T {
    charpoly_theorem(g).eval_at_zero()
}

pub fn permanent_full<T: Scalar>(g: &WeightedDigraph<T>) -> T {
    permpoly_theorem(g).eval_at_zero()
}
