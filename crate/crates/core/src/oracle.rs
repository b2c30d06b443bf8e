//! Brute-force references. Nothing in here shares code with the engines
//! beyond the polynomial and matrix types.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expand::Kind;
use crate::matrix::SquareMatrix;
use crate::poly::Polynomial;
use crate::scalar::{Ring, Scalar};

/// Largest order accepted by the permutation-sum oracles (10! terms).
pub const LEIBNIZ_LIMIT: usize = 10;

/// Largest order accepted by the Laplace-expansion oracle.
pub const LAPLACE_LIMIT: usize = 8;

/// Largest order accepted by Faddeev–LeVerrier.
pub const FADDEEV_LIMIT: usize = 30;

/// Largest number of search nodes the sparse determinant oracle may visit,
/// the same budget as a dense order-10 permutation sum.
pub const SPARSE_NODE_BUDGET: u64 = 3_628_800;

/// Sum over all permutations `σ` of `sgn(σ) ∏ m_{i,σ(i)}` (or without the
/// sign). Permutations hitting a zero entry are skipped since they add
/// nothing; every other permutation is visited explicitly. `None` once more
/// than `budget` partial permutations have been visited.
fn permutation_sum<R: Ring>(n: usize, kind: Kind, entry: &dyn Fn(usize, usize) -> Option<R>, budget: u64) -> Option<R> {
    struct Walk<'a, R> {
        n: usize,
        kind: Kind,
        entry: &'a dyn Fn(usize, usize) -> Option<R>,
        used: Vec<bool>,
        total: R,
        left: u64,
    }

    impl<R: Ring> Walk<'_, R> {
        fn go(&mut self, row: usize, inversions: usize, acc: R) -> bool {
            if self.left == 0 {
                return false;
            }
            self.left -= 1;
            if row == self.n {
                let term = if self.kind == Kind::Det && inversions % 2 == 1 { -acc } else { acc };
                self.total = self.total.clone() + term;
                return true;
            }
            for col in 0..self.n {
                if self.used[col] {
                    continue;
                }
                let Some(e) = (self.entry)(row, col) else { continue };
                let added = self.used[col + 1..].iter().filter(|&&u| u).count();
                self.used[col] = true;
                let ok = self.go(row + 1, inversions + added, acc.clone() * e);
                self.used[col] = false;
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    let mut w = Walk {
        n,
        kind,
        entry,
        used: vec![false; n],
        total: R::zero(),
        left: budget,
    };
    w.go(0, 0, R::one()).then_some(w.total)
}

fn check_limit(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { what, order: n, limit });
    }
    Ok(())
}

fn leibniz_shifted<T: Scalar>(a: &SquareMatrix<T>, kind: Kind) -> Result<Polynomial<T>> {
    check_limit(a.order(), LEIBNIZ_LIMIT, "the Leibniz oracle")?;
    let entry = |i: usize, j: usize| -> Option<Polynomial<T>> {
        let w = a.get(i, j);
        if i == j {
            Some(Polynomial::shifted_diagonal(w.clone()))
        } else if w.is_zero() {
            None
        } else {
            Some(Polynomial::constant(w.clone()))
        }
    };
    Ok(permutation_sum(a.order(), kind, &entry, u64::MAX).expect("unbounded"))
}

/// `det(A − λI)` by the permutation sum.
pub fn leibniz_charpoly<T: Scalar>(a: &SquareMatrix<T>) -> Result<Polynomial<T>> {
    leibniz_shifted(a, Kind::Det)
}

/// `per(A − λI)` by the permutation sum.
pub fn leibniz_permpoly<T: Scalar>(a: &SquareMatrix<T>) -> Result<Polynomial<T>> {
    leibniz_shifted(a, Kind::Per)
}

fn leibniz_scalar<T: Scalar>(a: &SquareMatrix<T>, kind: Kind) -> Result<T> {
    check_limit(a.order(), LEIBNIZ_LIMIT, "the Leibniz oracle")?;
    let entry = |i: usize, j: usize| {
        let w = a.get(i, j);
        (!w.is_zero()).then(|| w.clone())
    };
    Ok(permutation_sum(a.order(), kind, &entry, u64::MAX).expect("unbounded"))
}

pub fn leibniz_det<T: Scalar>(a: &SquareMatrix<T>) -> Result<T> {
    leibniz_scalar(a, Kind::Det)
}

pub fn leibniz_per<T: Scalar>(a: &SquareMatrix<T>) -> Result<T> {
    leibniz_scalar(a, Kind::Per)
}

/// Permutation-sum determinant without the order cap, for sparse matrices:
/// the work is bounded by [`SPARSE_NODE_BUDGET`] visited partial
/// permutations instead.
pub fn leibniz_det_sparse<T: Scalar>(a: &SquareMatrix<T>) -> Result<T> {
    let entry = |i: usize, j: usize| {
        let w = a.get(i, j);
        (!w.is_zero()).then(|| w.clone())
    };
    permutation_sum(a.order(), Kind::Det, &entry, SPARSE_NODE_BUDGET).ok_or(Error::TooLarge {
        what: "the sparse Leibniz oracle (node budget)",
        order: a.order(),
        limit: LEIBNIZ_LIMIT,
    })
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Generalized Laplace expansion along the fixed row set `rows` (0-based).
/// Returns `(det, per)`:
/// `det A = Σ_T (−1)^{Σ S + Σ T} det A[S,T] det A[S̄,T̄]` with 1-based index
/// sums, and the same without signs for the permanent.
pub fn laplace_expand<T: Scalar>(a: &SquareMatrix<T>, rows: &[usize]) -> Result<(T, T)> {
    let n = a.order();
    check_limit(n, LAPLACE_LIMIT, "the Laplace oracle")?;
    let mut s: Vec<usize> = rows.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.len() >= n || s.iter().any(|&r| r >= n) {
        return Err(Error::Precondition(format!(
            "row subset must be a nonempty proper subset of 0..{n}"
        )));
    }
    let s_bar: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    let s_weight: usize = s.iter().map(|i| i + 1).sum();

    let mut det = T::zero();
    let mut per = T::zero();
    for t in k_subsets(n, s.len()) {
        let t_bar: Vec<usize> = (0..n).filter(|j| !t.contains(j)).collect();
        let t_weight: usize = t.iter().map(|j| j + 1).sum();
        let inner = a.submatrix(&s, &t);
        let outer = a.submatrix(&s_bar, &t_bar);
        let d = leibniz_det(&inner)? * leibniz_det(&outer)?;
        det = det + if (s_weight + t_weight) % 2 == 0 { d } else { -d };
        per = per + leibniz_per(&inner)? * leibniz_per(&outer)?;
    }
    Ok((det, per))
}

/// Faddeev–LeVerrier in complex floating point, converted to the
/// `det(A − λI)` convention.
pub fn faddeev_leverrier(a: &SquareMatrix<Complex64>) -> Result<Polynomial<Complex64>> {
    let n = a.order();
    check_limit(n, FADDEEV_LIMIT, "Faddeev–LeVerrier")?;
    let am = DMatrix::from_fn(n, n, |i, j| *a.get(i, j));
    let identity = DMatrix::<Complex64>::identity(n, n);
    // c[k] is the coefficient of λ^k in det(λI − A).
    let mut c = vec![Complex64::zero(); n + 1];
    c[n] = Complex64::one();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for k in 1..=n {
        m = &am * &m + &identity * c[n - k + 1];
        let am_k = &am * &m;
        c[n - k] = -am_k.trace() / Complex64::new(k as f64, 0.0);
    }
    if n % 2 == 1 {
        for x in &mut c {
            *x = -*x;
        }
    }
    Ok(Polynomial::new(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Charpoly,
    Permpoly,
    Det,
    Per,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Mismatch { max_deviation: f64 },
}

/// Outcome of checking one engine value against one oracle value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub subject: String,
    pub quantity: Quantity,
    pub engine: String,
    pub oracle: String,
    pub engine_value: serde_json::Value,
    pub oracle_value: serde_json::Value,
    pub verdict: Verdict,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    pub fn compare_polys<T: Scalar>(
        subject: &str,
        quantity: Quantity,
        engine: &str,
        oracle: &str,
        engine_value: &Polynomial<T>,
        oracle_value: &Polynomial<T>,
        rel_tol: f64,
    ) -> Self {
        let verdict = if engine_value.approx_eq(oracle_value, rel_tol) {
            Verdict::Equal
        } else {
            Verdict::Mismatch {
                max_deviation: engine_value.max_deviation(oracle_value),
            }
        };
        OracleReport {
            subject: subject.into(),
            quantity,
            engine: engine.into(),
            oracle: oracle.into(),
            engine_value: engine_value.to_json(),
            oracle_value: oracle_value.to_json(),
            verdict,
        }
    }

    pub fn compare_scalars<T: Scalar>(
        subject: &str,
        quantity: Quantity,
        engine: &str,
        oracle: &str,
        engine_value: &T,
        oracle_value: &T,
        rel_tol: f64,
    ) -> Self {
        let scale = engine_value.magnitude().max(oracle_value.magnitude());
        let verdict = if engine_value.approx_eq(oracle_value, rel_tol, scale) {
            Verdict::Equal
        } else {
            Verdict::Mismatch {
                max_deviation: (engine_value.clone() - oracle_value.clone()).magnitude(),
            }
        };
        OracleReport {
            subject: subject.into(),
            quantity,
            engine: engine.into(),
            oracle: oracle.into(),
            engine_value: engine_value.to_json(),
            oracle_value: oracle_value.to_json(),
            verdict,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_bigint::BigInt;

    fn int(rows: &[&[i64]]) -> SquareMatrix<BigInt> {
        SquareMatrix::from_i64_rows(rows).unwrap()
    }

    fn int_poly(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn order_one_and_two() {
        let a = int(&[&[4]]);
        assert_eq!(leibniz_charpoly(&a).unwrap(), int_poly(&[4, -1]));
        assert_eq!(leibniz_permpoly(&a).unwrap(), int_poly(&[4, -1]));
        // (1−λ)(4−λ) ∓ 6
        let b = int(&[&[1, 2], &[3, 4]]);
        assert_eq!(leibniz_charpoly(&b).unwrap(), int_poly(&[-2, -5, 1]));
        assert_eq!(leibniz_permpoly(&b).unwrap(), int_poly(&[10, -5, 1]));
    }

    #[test]
    fn size_cap() {
        let big = SquareMatrix::<BigInt>::zeros(11);
        assert!(matches!(leibniz_charpoly(&big), Err(Error::TooLarge { .. })));
        assert!(matches!(leibniz_det(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn sparse_determinant_beyond_the_cap() {
        // Path on 12 vertices: one perfect matching, sign (−1)^6.
        let path = SquareMatrix::from_fn(12, |i, j| BigInt::from((i.abs_diff(j) == 1) as i64));
        assert_eq!(leibniz_det_sparse(&path).unwrap(), BigInt::from(1));
        let dense = SquareMatrix::from_fn(12, |_, _| BigInt::from(1));
        assert!(matches!(leibniz_det_sparse(&dense), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn sign_convention() {
        let a = fixtures::m1();
        let phi = leibniz_charpoly(&a).unwrap();
        assert_eq!(phi.eval_at_zero(), leibniz_det(&a).unwrap());
        assert_eq!(phi.degree(), Some(7));
        assert_eq!(phi.leading(), Some(&BigInt::from(-1)));
    }

    #[test]
    fn laplace_first_row_and_all_ones() {
        let a = int(&[&[2, -1, 0], &[3, 5, 1], &[0, 4, -2]]);
        let (det, per) = laplace_expand(&a, &[0]).unwrap();
        assert_eq!(det, leibniz_det(&a).unwrap());
        assert_eq!(per, leibniz_per(&a).unwrap());

        let ones = int(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(laplace_expand(&ones, &[0]).unwrap().1, BigInt::from(6));
        assert!(laplace_expand(&ones, &[]).is_err());
        assert!(laplace_expand(&ones, &[0, 1, 2]).is_err());
    }

    #[test]
    fn faddeev_identity_and_nilpotent() {
        let id = SquareMatrix::from_fn(3, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
        let p = faddeev_leverrier(&id).unwrap();
        let expected = Polynomial::new(
            [1.0, -3.0, 3.0, -1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        );
        assert!(p.approx_eq(&expected, 1e-12));

        let n = 4;
        let jordan = SquareMatrix::from_fn(n, |i, j| Complex64::new(if j == i + 1 { 1.0 } else { 0.0 }, 0.0));
        let p = faddeev_leverrier(&jordan).unwrap();
        let mut c = vec![Complex64::zero(); n + 1];
        c[n] = Complex64::one(); // (−λ)^4
        assert!(p.approx_eq(&Polynomial::new(c), 1e-12));
    }

    #[test]
    fn faddeev_matches_leibniz_on_m1() {
        let a = fixtures::m1();
        let exact = leibniz_charpoly(&a).unwrap();
        let exact_c = Polynomial::new(exact.coeffs().iter().map(Scalar::to_complex).collect());
        let fl = faddeev_leverrier(&a.to_complex()).unwrap();
        assert!(fl.approx_eq(&exact_c, 1e-9), "{fl:?} vs {exact_c:?}");
    }
}
