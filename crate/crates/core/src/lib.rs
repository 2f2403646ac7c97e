//! Continuous functional calculus for finite-dimensional C*-algebras.
//!
//! The concrete algebra is `M_n(ℂ)` (dense complex matrices with the operator
//! norm) together with its star-subalgebras. Given a matrix `a` and a scalar
//! function `f`, [`cfc`] computes `f(a)` over one of the scalar rings ℂ, ℝ or
//! ℝ≥0, returning the zero matrix (a *junk value*) whenever the ring predicate
//! fails or `f` cannot be evaluated on the spectrum. The non-unital variant
//! [`cfc_n`] works over the quasispectrum and additionally requires `f(0) = 0`.
//!
//! Every calculus result can be cross-checked against [`oracle::cfc_oracle`],
//! which interpolates `f` on the finite spectrum and evaluates the resulting
//! polynomial by plain matrix arithmetic.

pub mod cfc;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod sample;
pub mod scalars;
pub mod spectrum;
pub mod subalgebra;
pub mod tolerance;
pub mod unitization;

pub use cfc::{
    cfc, cfc_builtin, cfc_le, cfc_n, cfc_real, neg_part, pos_part, Builtin, CfcOutcome,
    JunkReason, RealCfcOutcome, ScalarFunction,
};
pub use eigen::{
    cluster_eigenvalues, hermitian_eigen, normal_spectral_decomposition, ClusteredSpectrum,
    SpectralDecomposition,
};
pub use error::{Error, Result};
pub use matrix::{
    adjoint, is_nonneg, is_selfadjoint, is_star_normal, operator_norm, ComplexMatrix,
    PredicateKind, PredicateReport, RealMatrix,
};
pub use oracle::{
    cfc_oracle, check_laws, lagrange_interpolant, poly_eval, LawEntry, LawReport, LawStatus,
    StarPolynomial,
};
pub use scalars::{embed, restrict_all, restrict_scalar, truncated_sub, RestrictionCheck, Scalar, ScalarRing};
pub use spectrum::{
    is_quasiregular, quasispectrum_intrinsic, quasispectrum_via_unitization, spectrum,
    QuasiregularCheck, QuasiregularWitness, SpectrumResult, SpectrumSource,
};
pub use subalgebra::{elemental_subalgebra, subalgebra_contains, Containment, StarSubalgebra};
pub use tolerance::Tolerances;
pub use unitization::{uni_mul, uni_norm, uni_norm_map, uni_represent, uni_star, UnitizationElement};
