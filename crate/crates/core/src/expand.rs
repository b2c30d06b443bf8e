//! Determinant and permanent by expansion with memoized minors.
//!
//! Rows are consumed in order; the state after `r` rows is the set of
//! columns they used, so each minor on the remaining rows is computed once.
//! Cost is `O(n · 2^n)` ring operations and only reachable column sets are
//! stored, so sparse matrices stay cheap. Ordered maps keep float sums
//! reproducible. Works over any [`Ring`], which lets
//! the same routine expand `A − λI` over polynomials or `A` over scalars.

use std::collections::BTreeMap;

use crate::digraph::WeightedDigraph;
use crate::poly::Polynomial;
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Signed: determinant / characteristic polynomial.
    Det,
    /// Unsigned: permanent / permanent polynomial.
    Per,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Det => "det",
            Kind::Per => "per",
        }
    }
}

/// Expand an `n × n` matrix whose nonzero entries are given by `entry`.
///
/// Panics for `n > 64`.
pub fn expand<R: Ring>(n: usize, kind: Kind, entry: impl Fn(usize, usize) -> Option<R>) -> R {
    assert!(n <= 64, "expansion supports order at most 64");
    if n == 0 {
        return R::one();
    }
    let rows: Vec<Vec<(usize, R)>> = (0..n)
        .map(|i| (0..n).filter_map(|j| entry(i, j).map(|e| (j, e))).collect())
        .collect();

    let mut layer: BTreeMap<u64, R> = BTreeMap::from([(0u64, R::one())]);
    for row in &rows {
        let mut next: BTreeMap<u64, R> = BTreeMap::new();
        for (mask, acc) in &layer {
            for (j, e) in row {
                let bit = 1u64 << j;
                if mask & bit != 0 {
                    continue;
                }
                let mut term = acc.clone() * e.clone();
                // Inversions added by placing this row at column j.
                if kind == Kind::Det && (mask >> j).count_ones() % 2 == 1 {
                    term = -term;
                }
                next.entry(mask | bit)
                    .and_modify(|v| *v = v.clone() + term.clone())
                    .or_insert(term);
            }
        }
        if next.is_empty() {
            return R::zero();
        }
        layer = next;
    }
    layer.into_values().next().unwrap_or_else(R::zero)
}

/// `det(A − λI)` or `per(A − λI)` of the digraph's matrix.
pub fn shifted_polynomial<T: Scalar>(g: &WeightedDigraph<T>, kind: Kind) -> Polynomial<T> {
    let vs = g.vertices();
    expand(g.order(), kind, |i, j| {
        let w = g.weight(vs[i], vs[j]);
        if i == j {
            Some(Polynomial::shifted_diagonal(w.cloned().unwrap_or_else(T::zero)))
        } else {
            w.map(|w| Polynomial::constant(w.clone()))
        }
    })
}

/// `det(A)` or `per(A)` of the digraph's matrix.
pub fn scalar_value<T: Scalar>(g: &WeightedDigraph<T>, kind: Kind) -> T {
    let vs = g.vertices();
    expand(g.order(), kind, |i, j| g.weight(vs[i], vs[j]).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SquareMatrix;
    use num_bigint::BigInt;

    fn digraph(rows: &[&[i64]]) -> WeightedDigraph<BigInt> {
        WeightedDigraph::from_matrix(&SquareMatrix::from_i64_rows(rows).unwrap())
    }

    #[test]
    fn two_by_two() {
        let g = digraph(&[&[1, 2], &[3, 4]]);
        assert_eq!(scalar_value(&g, Kind::Det), BigInt::from(-2));
        assert_eq!(scalar_value(&g, Kind::Per), BigInt::from(10));
        // (1-λ)(4-λ) - 6 = λ² - 5λ - 2
        let p = shifted_polynomial(&g, Kind::Det);
        assert_eq!(p.coeffs(), &[BigInt::from(-2), BigInt::from(-5), BigInt::from(1)]);
    }

    #[test]
    fn three_by_three_all_ones() {
        let g = digraph(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(scalar_value(&g, Kind::Per), BigInt::from(6));
        assert_eq!(scalar_value(&g, Kind::Det), BigInt::from(0));
    }

    #[test]
    fn permutation_sign() {
        // Single 3-cycle permutation matrix: even permutation, det = +1.
        let g = digraph(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(scalar_value(&g, Kind::Det), BigInt::from(1));
        // Transposition: det = -1.
        let t = digraph(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(scalar_value(&t, Kind::Det), BigInt::from(-1));
    }

    #[test]
    fn null_graph_is_unit() {
        let g = WeightedDigraph::<BigInt>::null();
        assert_eq!(shifted_polynomial(&g, Kind::Det), Polynomial::constant(BigInt::from(1)));
    }
}
