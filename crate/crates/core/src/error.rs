use num_complex::Complex64;
use thiserror::Error;

use crate::scalars::ScalarRing;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not normal (relative residual {residual:e})")]
    NotNormal { residual: f64 },

    #[error("matrix is not selfadjoint (relative residual {residual:e})")]
    NotSelfadjoint { residual: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix fails the {ring} predicate (residual {residual:e})")]
    PredicateFailure { ring: ScalarRing, residual: f64 },

    #[error("scalar {value} does not restrict to {target} (residual {residual:e})")]
    RestrictionFailure {
        value: Complex64,
        target: ScalarRing,
        residual: f64,
    },

    #[error("element is not in the subalgebra (projection residual {residual:e})")]
    NotInSubalgebra { residual: f64 },

    #[error("calculus result escaped the subalgebra (projection residual {residual:e})")]
    RangeNotContained { residual: f64 },

    #[error("interpolation nodes {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("spectrum too clustered for interpolation (min gap {min_gap:e}, diameter {diameter:e})")]
    IllConditioned { min_gap: f64, diameter: f64 },

    #[error("function cannot be evaluated on the spectrum")]
    EvalFailed,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}
