//! Dense univariate polynomials in λ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{CoefficientMode, Scalar, TRIM_REL};

/// Polynomial with coefficients `c_0, c_1, ...` (constant term first).
///
/// The zero polynomial has no coefficients. Trailing zero coefficients are
/// always trimmed; in float mode "zero" means below [`TRIM_REL`] of the
/// largest coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial λ.
    pub fn lambda() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `c - λ`: a diagonal entry of `A - λI`.
    pub fn shifted_diagonal(c: T) -> Self {
        Self::new(vec![c, -T::one()])
    }

    /// `λ - c`.
    pub fn lambda_minus(c: T) -> Self {
        Self::new(vec![-c, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Value at λ = 0.
    pub fn eval_at_zero(&self) -> T {
        self.coeff(0)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mode(&self) -> CoefficientMode {
        T::MODE
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Coefficient-wise comparison: exact in integer mode, within `rel_tol`
    /// of the largest coefficient of either side in float mode.
    pub fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.max_magnitude().max(other.max_magnitude());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i).approx_eq(&other.coeff(i), rel_tol, scale))
    }

    /// Largest coefficient-wise deviation, as a magnitude.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mode": T::MODE.as_str(),
            "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::parse(0, 0, m.to_string());
        let mode = v.get("mode").and_then(|m| m.as_str()).ok_or_else(|| bad("missing mode"))?;
        if mode != T::MODE.as_str() {
            return Err(Error::ModeMismatch {
                left: T::MODE.as_str(),
                right: if mode == "int" { "int" } else { "complex" },
            });
        }
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(|c| T::from_json(c).ok_or_else(|| bad("bad coefficient")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    fn trim(&mut self) {
        if T::MODE == CoefficientMode::Int {
            while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                self.coeffs.pop();
            }
        } else {
            let cutoff = self.max_magnitude() * TRIM_REL;
            while self
                .coeffs
                .last()
                .is_some_and(|c| c.is_zero() || c.magnitude() <= cutoff)
            {
                self.coeffs.pop();
            }
        }
    }
}

impl<T: Scalar> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Polynomial<T> {
    fn one() -> Self {
        Polynomial {
            coeffs: vec![T::one()],
        }
    }
}

impl<T: Scalar> Add for Polynomial<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for Polynomial<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<T: Scalar> Mul for Polynomial<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> std::iter::Sum for Polynomial<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl<T: Scalar> std::iter::Product for Polynomial<T> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| acc * p)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{i}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial whose coefficient mode is only known at run time, as read
/// from JSON or produced by the CLI.
#[derive(Clone, Debug, PartialEq)]
pub enum DynPolynomial {
    Int(Polynomial<BigInt>),
    Complex(Polynomial<Complex64>),
}

impl DynPolynomial {
    pub fn mode(&self) -> CoefficientMode {
        match self {
            DynPolynomial::Int(_) => CoefficientMode::Int,
            DynPolynomial::Complex(_) => CoefficientMode::Complex,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynPolynomial::Int(a), DynPolynomial::Int(b)) => Ok(DynPolynomial::Int(a + b)),
            (DynPolynomial::Complex(a), DynPolynomial::Complex(b)) => {
                Ok(DynPolynomial::Complex(a + b))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynPolynomial::Int(a), DynPolynomial::Int(b)) => Ok(DynPolynomial::Int(a * b)),
            (DynPolynomial::Complex(a), DynPolynomial::Complex(b)) => {
                Ok(DynPolynomial::Complex(a * b))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            DynPolynomial::Int(p) => p.to_json(),
            DynPolynomial::Complex(p) => p.to_json(),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v.get("mode").and_then(|m| m.as_str()) {
            Some("int") => Polynomial::from_json(v).map(DynPolynomial::Int),
            Some("complex") => Polynomial::from_json(v).map(DynPolynomial::Complex),
            _ => Err(Error::parse(0, 0, "mode must be \"int\" or \"complex\"")),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::ModeMismatch {
            left: self.mode().as_str(),
            right: other.mode().as_str(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn hand_expansion() {
        let p = Polynomial::lambda_minus(BigInt::from(5)) * Polynomial::lambda_minus(BigInt::from(-4));
        assert_eq!(p, int(&[-20, -1, 1]));
        assert_eq!(p.eval_at_zero(), BigInt::from(-20));
    }

    #[test]
    fn unit_and_cube() {
        let p = int(&[3, 0, 2]);
        assert_eq!(&p * &Polynomial::one(), p);
        let minus_lambda = int(&[0, -1]);
        let cube: Polynomial<BigInt> = std::iter::repeat(minus_lambda).take(3).product();
        assert_eq!(cube, int(&[0, 0, 0, -1]));
        assert_eq!(Polynomial::<BigInt>::one().eval_at_zero(), BigInt::from(1));
    }

    #[test]
    fn trimming() {
        assert!(int(&[0, 0]).is_zero());
        assert_eq!(int(&[1, 2, 0, 0]).degree(), Some(1));
        let f = Polynomial::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1e-15, 0.0),
        ]);
        assert_eq!(f.degree(), Some(0));
    }

    #[test]
    fn json_round_trip_and_mode_mismatch() {
        let p = DynPolynomial::Int(int(&[1, -2, 3]));
        let j = p.to_json();
        assert_eq!(j, serde_json::json!({"mode": "int", "coeffs": [1, -2, 3]}));
        assert_eq!(DynPolynomial::from_json(&j).unwrap(), p);

        let c = DynPolynomial::Complex(Polynomial::new(vec![Complex64::new(1.0, 2.0)]));
        assert_eq!(c.to_json(), serde_json::json!({"mode": "complex", "coeffs": [[1.0, 2.0]]}));
        assert!(matches!(p.try_mul(&c), Err(Error::ModeMismatch { .. })));
        assert!(matches!(p.try_add(&c), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn big_coefficients_serialize_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = Polynomial::constant(big.clone());
        let j = p.to_json();
        assert_eq!(j["coeffs"][0], serde_json::json!(big.to_string()));
        assert_eq!(Polynomial::<BigInt>::from_json(&j).unwrap(), p);
    }
}
