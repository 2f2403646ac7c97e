//! Scalar rings ℂ ⊇ ℝ ⊇ ℝ≥0 and the restriction maps between them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar; real and nonnegative scalars are embedded with `im = 0`.
pub type Scalar = Complex64;

/// One of the three scalar rings the calculus runs over.
///
/// Each ring selects the predicate a matrix must satisfy: normal over ℂ,
/// selfadjoint over ℝ, nonnegative over ℝ≥0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarRing {
    Complex,
    Real,
    #[serde(rename = "nnreal")]
    NNReal,
}

impl ScalarRing {
    pub const ALL: [ScalarRing; 3] = [ScalarRing::Complex, ScalarRing::Real, ScalarRing::NNReal];

    pub fn as_str(self) -> &'static str {
        match self {
            ScalarRing::Complex => "complex",
            ScalarRing::Real => "real",
            ScalarRing::NNReal => "nnreal",
        }
    }

    /// Whether `other` is a subring of `self`.
    pub fn contains(self, other: ScalarRing) -> bool {
        self <= other
    }

    /// The smaller of two rings in the chain ℝ≥0 ⊆ ℝ ⊆ ℂ.
    pub fn narrower(self, other: ScalarRing) -> ScalarRing {
        self.max(other)
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalarRing {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "complex" => Ok(ScalarRing::Complex),
            "real" => Ok(ScalarRing::Real),
            "nnreal" => Ok(ScalarRing::NNReal),
            other => Err(format!(
                "unknown ring `{other}` (expected complex, real or nnreal)"
            )),
        }
    }
}

/// Canonical inclusion of a real (or nonnegative real) number into a ring.
pub fn embed(x: f64, target: ScalarRing) -> Scalar {
    debug_assert!(target != ScalarRing::NNReal || x >= 0.0);
    Complex64::new(x, 0.0)
}

/// Restrict a complex scalar to `target`, within the absolute band `tol`.
///
/// The result is returned embedded back in ℂ. Over ℝ≥0, values in
/// `[-tol, 0)` are clamped to zero.
pub fn restrict_scalar(z: Scalar, target: ScalarRing, tol: f64) -> Result<Scalar> {
    let fail = |residual: f64| Error::RestrictionFailure {
        value: z,
        target,
        residual,
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(fail(f64::INFINITY));
    }
    match target {
        ScalarRing::Complex => Ok(z),
        ScalarRing::Real => {
            if z.im.abs() <= tol {
                Ok(Complex64::new(z.re, 0.0))
            } else {
                Err(fail(z.im.abs()))
            }
        }
        ScalarRing::NNReal => {
            let residual = z.im.abs().max(-z.re);
            if z.im.abs() <= tol && z.re >= -tol {
                Ok(Complex64::new(z.re.max(0.0), 0.0))
            } else {
                Err(fail(residual))
            }
        }
    }
}

/// Outcome of restricting a batch of scalars to a subring.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionCheck {
    pub ok: bool,
    pub restricted_values: Vec<Scalar>,
    pub max_residual: f64,
}

/// Restrict every value; `ok` only when all of them round-trip within `tol`.
pub fn restrict_all(values: &[Scalar], target: ScalarRing, tol: f64) -> RestrictionCheck {
    let mut restricted_values = Vec::with_capacity(values.len());
    let mut max_residual = 0.0f64;
    let mut ok = true;
    for &z in values {
        match restrict_scalar(z, target, tol) {
            Ok(r) => {
                max_residual = max_residual.max((r - z).norm());
                restricted_values.push(r);
            }
            Err(Error::RestrictionFailure { residual, .. }) => {
                ok = false;
                max_residual = max_residual.max(residual);
            }
            Err(_) => unreachable!(),
        }
    }
    if !ok {
        restricted_values.clear();
    }
    RestrictionCheck {
        ok,
        restricted_values,
        max_residual,
    }
}

/// Subtraction on ℝ≥0: `x - y` is `0` whenever `x ≤ y`.
pub fn truncated_sub(x: f64, y: f64) -> f64 {
    (x - y).max(0.0)
}
