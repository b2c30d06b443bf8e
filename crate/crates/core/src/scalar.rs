//! Coefficient rings for edge weights and polynomial coefficients.
//!
//! Two rings are supported: arbitrary-precision integers ([`BigInt`]) for
//! exact work, and [`Complex64`] for general complex matrices. The ring is a
//! type parameter, so a digraph's coefficient mode is fixed when it is built.

use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Default relative tolerance for comparing complex-float results.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Coefficients below this fraction of the largest one are trimmed in float mode.
pub const TRIM_REL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientMode {
    Int,
    Complex,
}

impl CoefficientMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientMode::Int => "int",
            CoefficientMode::Complex => "complex",
        }
    }
}

impl fmt::Display for CoefficientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Anything that behaves like a commutative ring with unit.
pub trait Ring:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<R> Ring for R where
    R: Clone
        + Zero
        + One
        + Add<Output = R>
        + Sub<Output = R>
        + Mul<Output = R>
        + Neg<Output = R>
{
}

/// A coefficient ring usable as edge weight.
pub trait Scalar: Ring + Debug + PartialEq + Send + Sync + 'static {
    const MODE: CoefficientMode;

    fn from_i64(v: i64) -> Self;

    /// Absolute value, used for tolerance scaling and trimming.
    fn magnitude(&self) -> f64;

    /// Equality in the ring: exact for integers, relative for floats.
    /// `scale` is the magnitude the relative tolerance is measured against.
    fn approx_eq(&self, other: &Self, rel_tol: f64, scale: f64) -> bool;

    /// Exact division when the result lies in the ring.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    fn to_complex(&self) -> Complex64;

    /// Short display form used in symbolic labels.
    fn label(&self) -> String;

    /// True for values that print with a leading minus sign.
    fn is_negative_real(&self) -> bool;

    /// Serialize one coefficient as JSON.
    fn to_json(&self) -> serde_json::Value;

    fn from_json(v: &serde_json::Value) -> Option<Self>;
}

impl Scalar for BigInt {
    const MODE: CoefficientMode = CoefficientMode::Int;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn approx_eq(&self, other: &Self, _rel_tol: f64, _scale: f64) -> bool {
        self == other
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn label(&self) -> String {
        self.to_string()
    }

    fn is_negative_real(&self) -> bool {
        self.is_negative()
    }

    fn to_json(&self) -> serde_json::Value {
        // Numbers outside i64 are written as decimal strings.
        match self.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(self.to_string()),
        }
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
            serde_json::Value::String(s) => s.parse().ok(),
            _ => None,
        }
    }
}

impl Scalar for Complex64 {
    const MODE: CoefficientMode = CoefficientMode::Complex;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn approx_eq(&self, other: &Self, rel_tol: f64, scale: f64) -> bool {
        (self - other).norm() <= rel_tol * scale.max(1.0)
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn label(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else {
            format!("({}{:+}i)", self.re, self.im)
        }
    }

    fn is_negative_real(&self) -> bool {
        self.im == 0.0 && self.re < 0.0
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.re, self.im])
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::Array(a) if a.len() == 2 => {
                Some(Complex64::new(a[0].as_f64()?, a[1].as_f64()?))
            }
            serde_json::Value::Number(n) => Some(Complex64::new(n.as_f64()?, 0.0)),
            _ => None,
        }
    }
}

/// `(-1)^k` in the ring.
pub fn sign<T: Scalar>(k: usize) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}
