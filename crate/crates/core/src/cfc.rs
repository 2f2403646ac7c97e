//! The continuous functional calculus.
//!
//! `cfc f a` is `u·diag(f(λ))·u*` when `a` satisfies the ring predicate and
//! `f` evaluates on the spectrum; otherwise it is the zero matrix, flagged as
//! junk. On a finite spectrum every function is continuous, so the only
//! remaining side condition is that `f` can be evaluated at each point.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{is_nonneg, ring_predicate, ComplexMatrix, RealMatrix};
use crate::scalars::{restrict_scalar, Scalar, ScalarRing};
use crate::spectrum::{spectral_data, SpectralData};
use crate::subalgebra::{subalgebra_contains, StarSubalgebra};
use crate::tolerance::Tolerances;

type EvalFn = dyn Fn(Scalar) -> Option<Scalar> + Send + Sync;

/// A (possibly partial) scalar function tagged with the ring it lives on.
///
/// Real and nonnegative functions see the real part of their argument.
/// Evaluation must be pure.
#[derive(Clone)]
pub struct ScalarFunction {
    eval: Arc<EvalFn>,
    ring: ScalarRing,
    name: Option<String>,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("ring", &self.ring)
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl ScalarFunction {
    pub fn from_partial(
        ring: ScalarRing,
        f: impl Fn(Scalar) -> Option<Scalar> + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(f),
            ring,
            name: None,
        }
    }

    pub fn complex(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self::from_partial(ScalarRing::Complex, move |z| Some(f(z)))
    }

    pub fn complex_partial(f: impl Fn(Complex64) -> Option<Complex64> + Send + Sync + 'static) -> Self {
        Self::from_partial(ScalarRing::Complex, f)
    }

    pub fn real(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::from_partial(ScalarRing::Real, move |z| Some(Complex64::new(f(z.re), 0.0)))
    }

    pub fn real_partial(f: impl Fn(f64) -> Option<f64> + Send + Sync + 'static) -> Self {
        Self::from_partial(ScalarRing::Real, move |z| f(z.re).map(|y| Complex64::new(y, 0.0)))
    }

    pub fn nnreal(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::from_partial(ScalarRing::NNReal, move |z| Some(Complex64::new(f(z.re), 0.0)))
    }

    pub fn nnreal_partial(f: impl Fn(f64) -> Option<f64> + Send + Sync + 'static) -> Self {
        Self::from_partial(ScalarRing::NNReal, move |z| f(z.re).map(|y| Complex64::new(y, 0.0)))
    }

    pub fn identity(ring: ScalarRing) -> Self {
        Self::from_partial(ring, Some).named("id")
    }

    pub fn constant(c: Scalar, ring: ScalarRing) -> Self {
        Self::from_partial(ring, move |_| Some(c)).named(format!("const {c}"))
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    /// Evaluate; `None` when undefined or non-finite.
    pub fn eval(&self, z: Scalar) -> Option<Scalar> {
        (self.eval)(z).filter(|y| y.re.is_finite() && y.im.is_finite())
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(Scalar, Scalar) -> Scalar + Send + Sync + 'static,
    ) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::from_partial(self.ring.narrower(other.ring), move |z| {
            Some(op(f.eval(z)?, g.eval(z)?))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x + y)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x * y)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let (g, f) = (self.clone(), inner.clone());
        Self::from_partial(self.ring.narrower(inner.ring), move |z| g.eval(f.eval(z)?))
    }

    /// `x ↦ conj(f(x))`.
    pub fn conj(&self) -> Self {
        let f = self.clone();
        Self::from_partial(self.ring, move |z| f.eval(z).map(|y| y.conj()))
    }

    /// `x ↦ f(-x)`.
    pub fn neg_arg(&self) -> Self {
        let f = self.clone();
        Self::from_partial(self.ring, move |z| f.eval(-z))
    }

    /// `x ↦ f(conj x)`.
    pub fn conj_arg(&self) -> Self {
        let f = self.clone();
        Self::from_partial(self.ring, move |z| f.eval(z.conj()))
    }

    /// `x ↦ f(1/x)`, undefined at 0.
    pub fn inv_arg(&self) -> Self {
        let f = self.clone();
        Self::from_partial(self.ring, move |z| {
            if z == Complex64::new(0.0, 0.0) {
                None
            } else {
                f.eval(z.inv())
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JunkReason {
    PredicateFailed,
    EvalFailed,
    ZeroConditionFailed,
}

impl JunkReason {
    pub fn as_str(self) -> &'static str {
        match self {
            JunkReason::PredicateFailed => "predicate_failed",
            JunkReason::EvalFailed => "eval_failed",
            JunkReason::ZeroConditionFailed => "zero_condition_failed",
        }
    }
}

/// Result of the calculus: a genuine value, or the zero matrix with a reason.
#[derive(Debug, Clone, PartialEq)]
pub struct CfcOutcome {
    pub value: ComplexMatrix,
    pub junk: bool,
    pub reason: Option<JunkReason>,
}

impl CfcOutcome {
    fn ok(value: ComplexMatrix) -> Self {
        Self {
            value,
            junk: false,
            reason: None,
        }
    }

    fn junk(n: usize, reason: JunkReason) -> Self {
        Self {
            value: ComplexMatrix::zeros(n),
            junk: true,
            reason: Some(reason),
        }
    }

    /// The value when not junk.
    pub fn get(&self) -> Option<&ComplexMatrix> {
        (!self.junk).then_some(&self.value)
    }
}

/// Apply `f` to each spectral point in the effective ring and restrict the
/// output back to it.
pub(crate) fn evaluate_on_points(
    f: &ScalarFunction,
    points: &[Scalar],
    ring: ScalarRing,
    tol: f64,
) -> Option<Vec<Scalar>> {
    let effective = ring.narrower(f.ring());
    points
        .iter()
        .map(|&x| {
            let x = restrict_scalar(x, effective, tol).ok()?;
            let y = f.eval(x)?;
            restrict_scalar(y, effective, tol * y.norm().max(1.0)).ok()
        })
        .collect()
}

fn assemble(data: &SpectralData, cluster_values: &[Scalar], ring: ScalarRing) -> ComplexMatrix {
    let per_eigen: Vec<Scalar> = data
        .clusters
        .labels
        .iter()
        .map(|&l| cluster_values[l])
        .collect();
    let value = data.decomposition.apply_diag(&per_eigen);
    match ring {
        ScalarRing::Complex => value,
        ScalarRing::Real | ScalarRing::NNReal => value.hermitian_part(),
    }
}

/// Unital functional calculus `cfc f a` over `ring`.
pub fn cfc(f: &ScalarFunction, a: &ComplexMatrix, ring: ScalarRing, tol: Tolerances) -> CfcOutcome {
    let n = a.n();
    if !ring_predicate(a, ring, tol.tol).holds {
        return CfcOutcome::junk(n, JunkReason::PredicateFailed);
    }
    let Ok(data) = spectral_data(a, ring, &tol) else {
        return CfcOutcome::junk(n, JunkReason::PredicateFailed);
    };
    let Some(values) = evaluate_on_points(f, &data.clusters.points, ring, tol.tol) else {
        return CfcOutcome::junk(n, JunkReason::EvalFailed);
    };
    CfcOutcome::ok(assemble(&data, &values, ring))
}

/// Non-unital calculus `cfc_n f a`: `f` must vanish at 0.
///
/// When a subalgebra is supplied, `a` must lie in it and so does the result.
pub fn cfc_n(
    f: &ScalarFunction,
    a: &ComplexMatrix,
    subalgebra: Option<&StarSubalgebra>,
    ring: ScalarRing,
    tol: Tolerances,
) -> Result<CfcOutcome> {
    let n = a.n();
    if let Some(b) = subalgebra {
        let c = subalgebra_contains(b, a, tol.tol)?;
        if !c.contained {
            return Err(Error::NotInSubalgebra { residual: c.residual });
        }
    }
    if !ring_predicate(a, ring, tol.tol).holds {
        return Ok(CfcOutcome::junk(n, JunkReason::PredicateFailed));
    }
    let Ok(data) = spectral_data(a, ring, &tol) else {
        return Ok(CfcOutcome::junk(n, JunkReason::PredicateFailed));
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut points = data.clusters.points.clone();
    points.push(zero);
    let Some(mut values) = evaluate_on_points(f, &points, ring, tol.tol) else {
        return Ok(CfcOutcome::junk(n, JunkReason::EvalFailed));
    };
    let f0 = values.pop().unwrap();
    if f0.norm() > tol.tol {
        return Ok(CfcOutcome::junk(n, JunkReason::ZeroConditionFailed));
    }
    for (v, p) in values.iter_mut().zip(&data.clusters.points) {
        if *p == zero {
            *v = zero;
        }
    }
    let value = assemble(&data, &values, ring);
    if let Some(b) = subalgebra {
        let c = subalgebra_contains(b, &value, tol.tol)?;
        if !c.contained {
            return Err(Error::RangeNotContained { residual: c.residual });
        }
    }
    Ok(CfcOutcome::ok(value))
}

/// `a⁺ = cfc_n (x ↦ max(x, 0)) a` over ℝ.
pub fn pos_part(a: &ComplexMatrix, tol: Tolerances) -> CfcOutcome {
    let f = ScalarFunction::real(|x| x.max(0.0)).named("pos");
    cfc_n(&f, a, None, ScalarRing::Real, tol).expect("no subalgebra supplied")
}

/// `a⁻ = cfc_n (x ↦ max(-x, 0)) a` over ℝ.
pub fn neg_part(a: &ComplexMatrix, tol: Tolerances) -> CfcOutcome {
    let f = ScalarFunction::real(|x| (-x).max(0.0)).named("neg");
    cfc_n(&f, a, None, ScalarRing::Real, tol).expect("no subalgebra supplied")
}

/// Named scalar functions with ring-specific conventions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// Principal root over ℂ; over ℝ negative inputs map to 0.
    Sqrt,
    Abs,
    Exp,
    /// Principal branch over ℂ; undefined at 0 (and on negatives over ℝ).
    Log,
    /// `1/x`, undefined at 0.
    Inv,
    Pow(u32),
    Rpow(f64),
}

impl Builtin {
    pub fn name(&self) -> String {
        match self {
            Builtin::Sqrt => "sqrt".into(),
            Builtin::Abs => "abs".into(),
            Builtin::Exp => "exp".into(),
            Builtin::Log => "log".into(),
            Builtin::Inv => "inv".into(),
            Builtin::Pow(k) => format!("pow {k}"),
            Builtin::Rpow(t) => format!("rpow {t}"),
        }
    }

    pub fn function(self, ring: ScalarRing) -> ScalarFunction {
        let zero = Complex64::new(0.0, 0.0);
        let f = match (self, ring) {
            (Builtin::Sqrt, ScalarRing::Complex) => ScalarFunction::complex(|z| z.sqrt()),
            (Builtin::Sqrt, ScalarRing::Real) => ScalarFunction::real(|x| x.max(0.0).sqrt()),
            (Builtin::Sqrt, ScalarRing::NNReal) => ScalarFunction::nnreal(f64::sqrt),
            (Builtin::Abs, ScalarRing::Complex) => {
                ScalarFunction::complex(|z| Complex64::new(z.norm(), 0.0))
            }
            (Builtin::Abs, ScalarRing::Real) => ScalarFunction::real(f64::abs),
            (Builtin::Abs, ScalarRing::NNReal) => ScalarFunction::nnreal(|x| x),
            (Builtin::Exp, ScalarRing::Complex) => ScalarFunction::complex(|z| z.exp()),
            (Builtin::Exp, ScalarRing::Real) => ScalarFunction::real(f64::exp),
            (Builtin::Exp, ScalarRing::NNReal) => ScalarFunction::nnreal(f64::exp),
            (Builtin::Log, ScalarRing::Complex) => {
                ScalarFunction::complex_partial(move |z| (z != zero).then(|| z.ln()))
            }
            (Builtin::Log, _) => ScalarFunction::from_partial(ring, |z| {
                (z.re > 0.0).then(|| Complex64::new(z.re.ln(), 0.0))
            }),
            (Builtin::Inv, _) => {
                ScalarFunction::from_partial(ring, move |z| (z != zero).then(|| z.inv()))
            }
            (Builtin::Pow(k), _) => ScalarFunction::from_partial(ring, move |z| Some(z.powu(k))),
            (Builtin::Rpow(t), ScalarRing::Complex) => ScalarFunction::complex_partial(move |z| {
                if z == zero {
                    (t > 0.0).then_some(zero)
                } else {
                    Some(z.powf(t))
                }
            }),
            (Builtin::Rpow(t), _) => ScalarFunction::from_partial(ring, move |z| {
                let x = z.re;
                if x < 0.0 || (x == 0.0 && t <= 0.0) {
                    None
                } else {
                    Some(Complex64::new(x.powf(t), 0.0))
                }
            }),
        };
        f.named(self.name())
    }
}

pub fn cfc_builtin(name: Builtin, a: &ComplexMatrix, ring: ScalarRing, tol: Tolerances) -> CfcOutcome {
    cfc(&name.function(ring), a, ring, tol)
}

/// Real-scalar calculus on a real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCfcOutcome {
    pub value: RealMatrix,
    pub junk: bool,
    pub reason: Option<JunkReason>,
}

/// `cfc f a` over ℝ for a real symmetric matrix and a real function.
pub fn cfc_real(
    f: impl Fn(f64) -> Option<f64> + Send + Sync + 'static,
    a: &RealMatrix,
    tol: Tolerances,
) -> RealCfcOutcome {
    let f = ScalarFunction::real_partial(f);
    let out = cfc(&f, &a.to_complex(), ScalarRing::Real, tol);
    RealCfcOutcome {
        value: RealMatrix::from_complex_real_part(&out.value),
        junk: out.junk,
        reason: out.reason,
    }
}

/// Loewner comparison `cfc f a ≤ cfc g a`; `None` if either side is junk.
pub fn cfc_le(
    f: &ScalarFunction,
    g: &ScalarFunction,
    a: &ComplexMatrix,
    ring: ScalarRing,
    tol: Tolerances,
) -> Option<bool> {
    let lhs = cfc(f, a, ring, tol);
    let rhs = cfc(g, a, ring, tol);
    if lhs.junk || rhs.junk {
        return None;
    }
    Some(is_nonneg(&(&rhs.value - &lhs.value), tol.tol).holds)
}
