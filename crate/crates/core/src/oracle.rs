//! Independent ground truth for the calculus.
//!
//! On a finite spectrum the Lagrange interpolant of `f` agrees with `f` at
//! every spectral point, so evaluating it on `a` by plain matrix arithmetic
//! must reproduce `cfc f a` (the calculus is the unique star-homomorphism
//! sending the identity function to `a`). This path never touches
//! eigenvectors. [`check_laws`] runs the full law suite on one input.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::cfc::{cfc, cfc_n, evaluate_on_points, ScalarFunction};
use crate::error::{Error, Result};
use crate::matrix::{is_star_normal, ring_predicate, ComplexMatrix, EPS_FLOOR};
use crate::scalars::{Scalar, ScalarRing};
use crate::spectrum::{spectral_data, spectrum};
use crate::subalgebra::{elemental_subalgebra, subalgebra_contains};
use crate::tolerance::Tolerances;

/// `Σ c·z^k·conj(z)^m` with distinct exponent pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct StarPolynomial {
    terms: Vec<(u32, u32, Scalar)>,
}

impl StarPolynomial {
    /// Merges repeated exponent pairs by summing their coefficients.
    pub fn new(terms: impl IntoIterator<Item = (u32, u32, Scalar)>) -> Self {
        let mut merged: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for (k, m, c) in terms {
            *merged.entry((k, m)).or_default() += c;
        }
        Self {
            terms: merged.into_iter().map(|((k, m), c)| (k, m, c)).collect(),
        }
    }

    /// Pure-`z` polynomial from ascending coefficients.
    pub fn from_coefficients(coeffs: &[Scalar]) -> Self {
        Self::new(coeffs.iter().enumerate().map(|(k, &c)| (k as u32, 0, c)))
    }

    pub fn terms(&self) -> &[(u32, u32, Scalar)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|&(k, m, _)| k + m).max().unwrap_or(0)
    }

    pub fn eval_scalar(&self, z: Scalar) -> Scalar {
        self.terms
            .iter()
            .map(|&(k, m, c)| c * z.powu(k) * z.conj().powu(m))
            .sum()
    }

    pub fn to_function(&self, ring: ScalarRing) -> ScalarFunction {
        let p = self.clone();
        ScalarFunction::from_partial(ring, move |z| Some(p.eval_scalar(z)))
    }
}

impl fmt::Display for StarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(k, m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:.3})")?;
            if k > 0 {
                write!(f, "·z^{k}")?;
            }
            if m > 0 {
                write!(f, "·z̄^{m}")?;
            }
        }
        Ok(())
    }
}

/// `Σ c·a^k·(a*)^m` by direct matrix arithmetic.
pub fn poly_eval(p: &StarPolynomial, a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let report = is_star_normal(a, tol);
    if !report.holds {
        return Err(Error::NotNormal {
            residual: report.residual,
        });
    }
    let n = a.n();
    let max_k = p.terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
    let max_m = p.terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut pow_a = vec![ComplexMatrix::identity(n)];
    for k in 1..=max_k {
        pow_a.push(&pow_a[k - 1] * a);
    }
    let a_star = a.adjoint();
    let mut pow_s = vec![ComplexMatrix::identity(n)];
    for m in 1..=max_m {
        pow_s.push(&pow_s[m - 1] * &a_star);
    }
    let mut out = ComplexMatrix::zeros(n);
    for &(k, m, c) in &p.terms {
        let term = if m == 0 {
            pow_a[k as usize].clone()
        } else if k == 0 {
            pow_s[m as usize].clone()
        } else {
            &pow_a[k as usize] * &pow_s[m as usize]
        };
        out += &term.scale(c);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    pub poly: StarPolynomial,
    /// `max_j |p(x_j) − v_j| / max(1, |v_j|)`.
    pub max_residual: f64,
}

fn poly_mul_linear(coeffs: &[Scalar], root: Scalar) -> Vec<Scalar> {
    // (Σ c_k z^k)·(z − root)
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
    for (k, &c) in coeffs.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c * root;
    }
    out
}

/// Unique polynomial of degree `< k` through `k` distinct nodes.
pub fn lagrange_interpolant(points: &[Scalar], values: &[Scalar]) -> Result<Interpolant> {
    assert_eq!(points.len(), values.len(), "one value per node");
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    let k = points.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); k.max(1)];
    for j in 0..k {
        let mut basis = vec![Complex64::new(1.0, 0.0)];
        let mut denom = Complex64::new(1.0, 0.0);
        for m in 0..k {
            if m != j {
                basis = poly_mul_linear(&basis, points[m]);
                denom *= points[j] - points[m];
            }
        }
        let w = values[j] / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += w * b;
        }
    }
    let poly = StarPolynomial::from_coefficients(&coeffs);
    let max_residual = points
        .iter()
        .zip(values)
        .map(|(&x, &v)| (poly.eval_scalar(x) - v).norm() / v.norm().max(1.0))
        .fold(0.0, f64::max);
    Ok(Interpolant { poly, max_residual })
}

/// Minimum spectral gap, relative to the diameter, below which the
/// interpolation oracle declines to run.
pub const ORACLE_GAP_REL: f64 = 1e-6;

/// `f(a)` through interpolation on the spectrum and polynomial evaluation.
///
/// Nodes are centered and scaled to the unit disk before interpolating; the
/// polynomial is then evaluated on `(a − c·I)/s`.
pub fn cfc_oracle(f: &ScalarFunction, a: &ComplexMatrix, ring: ScalarRing, tol: Tolerances) -> Result<ComplexMatrix> {
    let report = ring_predicate(a, ring, tol.tol);
    if !report.holds {
        return Err(Error::PredicateFailure {
            ring,
            residual: report.residual,
        });
    }
    let data = spectral_data(a, ring, &tol)?;
    let points = &data.clusters.points;
    let values = evaluate_on_points(f, points, ring, tol.tol).ok_or(Error::EvalFailed)?;
    let (min_gap, diameter) = (data.clusters.min_gap(), data.clusters.diameter());
    if points.len() > 1 && min_gap < ORACLE_GAP_REL * diameter {
        return Err(Error::IllConditioned { min_gap, diameter });
    }
    let center: Scalar = points.iter().sum::<Scalar>() / points.len() as f64;
    let radius = points.iter().map(|p| (p - center).norm()).fold(0.0, f64::max);
    let s = if radius > 0.0 { radius } else { 1.0 };
    let nodes: Vec<Scalar> = points.iter().map(|p| (p - center) / s).collect();
    let interp = lagrange_interpolant(&nodes, &values)?;
    let shifted = a.add_scalar(-center).scale_real(1.0 / s);
    let out = poly_eval(&interp.poly, &shifted, tol.tol)?;
    Ok(match ring {
        ScalarRing::Complex => out,
        _ => out.hermitian_part(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for LawStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawStatus::Pass => "pass",
            LawStatus::Fail => "FAIL",
            LawStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawEntry {
    pub name: String,
    pub status: LawStatus,
    pub residual: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LawReport {
    pub entries: Vec<LawEntry>,
}

impl LawReport {
    fn record(&mut self, name: &str, residual: f64, tolerance: f64) {
        let status = if residual <= tolerance {
            LawStatus::Pass
        } else {
            LawStatus::Fail
        };
        self.entries.push(LawEntry {
            name: name.into(),
            status,
            residual: Some(residual),
            tolerance,
            note: None,
        });
    }

    fn skip(&mut self, name: &str, tolerance: f64, note: &str) {
        self.entries.push(LawEntry {
            name: name.into(),
            status: LawStatus::Skipped,
            residual: None,
            tolerance,
            note: Some(note.into()),
        });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != LawStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn count(&self, status: LawStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// Merge per-trial reports law by law.
    ///
    /// A law fails if any trial failed, passes if some trial passed and none
    /// failed, and is skipped otherwise. The entry kept is the one with the
    /// largest residual-to-tolerance ratio.
    pub fn aggregate<'a>(reports: impl IntoIterator<Item = &'a LawReport>) -> LawReport {
        let mut out: Vec<LawEntry> = Vec::new();
        for report in reports {
            for e in &report.entries {
                let Some(slot) = out.iter_mut().find(|o| o.name == e.name) else {
                    out.push(e.clone());
                    continue;
                };
                let rank = |x: &LawEntry| match x.status {
                    LawStatus::Skipped => 0,
                    LawStatus::Pass => 1,
                    LawStatus::Fail => 2,
                };
                let ratio = |x: &LawEntry| x.residual.map_or(f64::NEG_INFINITY, |r| rel(r, x.tolerance));
                if (rank(e), ratio(e)) > (rank(slot), ratio(slot)) {
                    *slot = e.clone();
                }
            }
        }
        LawReport { entries: out }
    }

    /// Fixed-width table for terminals.
    pub fn table(&self) -> String {
        let mut out = format!("{:<24} {:<8} {:>12} {:>10}\n", "law", "status", "residual", "tol");
        for e in &self.entries {
            let residual = e.residual.map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
            out.push_str(&format!("{:<24} {:<8} {:>12} {:>10.1e}", e.name, e.status.to_string(), residual, e.tolerance));
            if let Some(note) = &e.note {
                out.push_str("  ");
                out.push_str(note);
            }
            out.push('\n');
        }
        out
    }
}

pub const HOMOMORPHISM_TOL: f64 = 1e-9;
pub const SPECTRAL_MAPPING_TOL: f64 = 1e-8;
pub const COMPOSITION_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-8;
pub const ISOMETRY_TOL: f64 = 1e-9;

/// Every law that needs the predicate; skipped together when it fails.
const PREDICATE_LAWS: [(&str, f64); 17] = [
    ("id", HOMOMORPHISM_TOL),
    ("const", HOMOMORPHISM_TOL),
    ("add", HOMOMORPHISM_TOL),
    ("mul", HOMOMORPHISM_TOL),
    ("star", HOMOMORPHISM_TOL),
    ("predicate_preservation", HOMOMORPHISM_TOL),
    ("congruence", HOMOMORPHISM_TOL),
    ("congruence_converse", HOMOMORPHISM_TOL),
    ("spectral_mapping", SPECTRAL_MAPPING_TOL),
    ("composition", COMPOSITION_TOL),
    ("isometry", ISOMETRY_TOL),
    ("isometry_pointwise", ISOMETRY_TOL),
    ("range", HOMOMORPHISM_TOL),
    ("oracle", ORACLE_TOL),
    ("unital_nonunital", HOMOMORPHISM_TOL),
    ("neg_transport", HOMOMORPHISM_TOL),
    ("star_transport", HOMOMORPHISM_TOL),
];

fn law_tol(name: &str) -> f64 {
    PREDICATE_LAWS.iter().find(|l| l.0 == name).map_or(HOMOMORPHISM_TOL, |l| l.1)
}

fn rel(diff: f64, scale: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / scale.max(EPS_FLOOR)
    }
}

fn max_abs(values: &[Scalar]) -> f64 {
    values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Run the law suite for `f`, `g` on `a` over `ring`.
///
/// Laws that cannot apply (failed predicate, `f` not evaluable, `f(0) ≠ 0`
/// for the non-unital comparison, ...) are reported as skipped.
pub fn check_laws(
    a: &ComplexMatrix,
    f: &ScalarFunction,
    g: &ScalarFunction,
    ring: ScalarRing,
    tol: Tolerances,
) -> LawReport {
    let mut report = LawReport::default();
    let n = a.n();
    let fa = cfc(f, a, ring, tol);
    let ga = cfc(g, a, ring, tol);
    let fna = cfc_n(f, a, None, ring, tol).expect("no subalgebra supplied");
    let totality = [&fa, &ga, &fna]
        .iter()
        .all(|o| !o.junk || o.value.is_zero());
    report.record("junk_totality", if totality { 0.0 } else { 1.0 }, 0.0);

    let skip_all = |report: &mut LawReport, from: usize, note: &str| {
        for (name, t) in &PREDICATE_LAWS[from..] {
            report.skip(name, *t, note);
        }
    };
    if !ring_predicate(a, ring, tol.tol).holds {
        skip_all(&mut report, 0, "ring predicate fails");
        return report;
    }

    let id = cfc(&ScalarFunction::identity(ring), a, ring, tol);
    report.record("id", rel(id.value.dist(a), a.operator_norm()), law_tol("id"));

    let c = match ring {
        ScalarRing::Complex => Complex64::new(1.5, -0.5),
        _ => Complex64::new(1.5, 0.0),
    };
    let cst = cfc(&ScalarFunction::constant(c, ring), a, ring, tol);
    let c_i = ComplexMatrix::identity(n).scale(c);
    report.record("const", rel(cst.value.dist(&c_i), c.norm()), law_tol("const"));

    if fa.junk || ga.junk {
        skip_all(&mut report, 2, "f or g not evaluable on the spectrum");
        return report;
    }
    let (fv, gv) = (&fa.value, &ga.value);
    let (fnorm, gnorm) = (fv.operator_norm(), gv.operator_norm());

    let sum = cfc(&f.add(g), a, ring, tol).value;
    report.record("add", rel(sum.dist(&(fv + gv)), fnorm + gnorm), law_tol("add"));

    let prod = cfc(&f.mul(g), a, ring, tol).value;
    report.record("mul", rel(prod.dist(&(fv * gv)), fnorm * gnorm), law_tol("mul"));

    let conj = cfc(&f.conj(), a, ring, tol).value;
    report.record("star", rel(conj.dist(&fv.adjoint()), fnorm), law_tol("star"));

    let preserved = ring_predicate(fv, ring, tol.tol);
    report.record("predicate_preservation", preserved.residual, tol.tol);

    let data = match spectral_data(a, ring, &tol) {
        Ok(d) => d,
        Err(_) => {
            skip_all(&mut report, 6, "spectrum unavailable");
            return report;
        }
    };
    let points = data.clusters.points.clone();
    let f_vals = evaluate_on_points(f, &points, ring, tol.tol).expect("f evaluated by cfc");
    let g_vals = evaluate_on_points(g, &points, ring, tol.tol).expect("g evaluated by cfc");
    let max_f = max_abs(&f_vals);

    // f plus a multiple of the spectrum's vanishing polynomial.
    let nodes = points.clone();
    let bump = f.add(&ScalarFunction::from_partial(ring, move |z| {
        Some(nodes.iter().map(|p| z - p).product::<Scalar>() * 0.75)
    }));
    let same = cfc(&bump, a, ring, tol);
    report.record("congruence", rel(same.value.dist(fv), fnorm), law_tol("congruence"));

    let gap = f_vals.iter().zip(&g_vals).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    report.record(
        "congruence_converse",
        rel((fv.dist(gv) - gap).abs(), max_f.max(max_abs(&g_vals))),
        law_tol("congruence_converse"),
    );

    match spectrum(fv, ring, tol) {
        Ok(sf) => {
            let image = crate::eigen::cluster_eigenvalues(&f_vals, 0.0);
            let diameter = image.diameter();
            let scale = diameter.max(1e-4 * max_f);
            report.record("spectral_mapping", rel(sf.hausdorff(&f_vals), scale), law_tol("spectral_mapping"));
        }
        Err(e) => report.entries.push(LawEntry {
            name: "spectral_mapping".into(),
            status: LawStatus::Fail,
            residual: None,
            tolerance: law_tol("spectral_mapping"),
            note: Some(e.to_string()),
        }),
    }

    let composed = cfc(&g.compose(f), a, ring, tol);
    if composed.junk {
        report.skip("composition", law_tol("composition"), "g not evaluable on f(σ)");
    } else {
        let nested = cfc(g, fv, ring, tol).value;
        let scale = composed.value.operator_norm().max(nested.operator_norm());
        report.record("composition", rel(composed.value.dist(&nested), scale), law_tol("composition"));
    }

    report.record("isometry", rel((fnorm - max_f).abs(), max_f), law_tol("isometry"));
    report.record("isometry_pointwise", (max_f - fnorm).max(0.0), law_tol("isometry_pointwise"));

    match elemental_subalgebra(a, true, tol.tol).and_then(|b| subalgebra_contains(&b, fv, tol.tol)) {
        Ok(c) => report.record("range", c.residual, tol.tol),
        Err(e) => report.skip("range", tol.tol, &e.to_string()),
    }

    match cfc_oracle(f, a, ring, tol) {
        Ok(o) => report.record("oracle", rel(o.dist(fv), 1.0 + max_f), law_tol("oracle")),
        Err(e) => report.skip("oracle", law_tol("oracle"), &e.to_string()),
    }

    let zero = Complex64::new(0.0, 0.0);
    match evaluate_on_points(f, &[zero], ring, tol.tol) {
        Some(v) if v[0].norm() <= tol.tol => {
            report.record("unital_nonunital", rel(fna.value.dist(fv), fnorm), law_tol("unital_nonunital"))
        }
        _ => report.skip("unital_nonunital", law_tol("unital_nonunital"), "f(0) ≠ 0"),
    }

    if ring == ScalarRing::NNReal {
        report.skip("neg_transport", law_tol("neg_transport"), "-a is not nonnegative");
    } else {
        let lhs = cfc(f, &-a, ring, tol);
        let rhs = cfc(&f.neg_arg(), a, ring, tol);
        if lhs.junk && rhs.junk {
            report.skip("neg_transport", law_tol("neg_transport"), "f not evaluable on -σ");
        } else {
            let scale = lhs.value.operator_norm().max(rhs.value.operator_norm());
            report.record("neg_transport", rel(lhs.value.dist(&rhs.value), scale), law_tol("neg_transport"));
        }
    }

    let lhs = cfc(f, &a.adjoint(), ring, tol);
    let rhs = cfc(&f.conj_arg(), a, ring, tol);
    if lhs.junk && rhs.junk {
        report.skip("star_transport", law_tol("star_transport"), "f not evaluable on conj σ");
    } else {
        let scale = lhs.value.operator_norm().max(rhs.value.operator_norm());
        report.record("star_transport", rel(lhs.value.dist(&rhs.value), scale), law_tol("star_transport"));
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfc::Builtin;
    use crate::sample;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn poly_eval_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let a = sample::random_normal(&mut rng, 4, 1.0);
        let z = StarPolynomial::new([(1, 0, c(1.0, 0.0))]);
        assert!(poly_eval(&z, &a, 1e-9).unwrap().dist(&a) < 1e-15);
        let zz = StarPolynomial::new([(1, 1, c(1.0, 0.0))]);
        assert!(poly_eval(&zz, &a, 1e-9).unwrap().dist(&(&a * &a.adjoint())) < 1e-15);
        let sq = StarPolynomial::new([(2, 0, c(1.0, 0.0))]);
        let m = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert_eq!(poly_eval(&sq, &m, 1e-9).unwrap(), ComplexMatrix::from_real_rows(&[&[5.0, 4.0], &[4.0, 5.0]]));
        assert!(matches!(poly_eval(&sq, &ComplexMatrix::unit(2, 0, 1), 1e-9), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn repeated_exponents_merge() {
        let p = StarPolynomial::new([(1, 0, c(1.0, 0.0)), (1, 0, c(2.0, 0.0)), (0, 2, c(0.0, 1.0))]);
        assert_eq!(p.terms(), &[(0, 2, c(0.0, 1.0)), (1, 0, c(3.0, 0.0))]);
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn interpolation_examples() {
        let i = lagrange_interpolant(&[c(1.0, 0.0), c(4.0, 0.0)], &[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let coeffs: Vec<Scalar> = i.poly.terms().iter().map(|t| t.2).collect();
        assert!((coeffs[0] - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((coeffs[1] - c(1.0 / 3.0, 0.0)).norm() < 1e-15);

        let i = lagrange_interpolant(&[c(0.5, 2.0)], &[c(-3.0, 1.0)]).unwrap();
        assert_eq!(i.poly.terms(), &[(0, 0, c(-3.0, 1.0))]);

        let i = lagrange_interpolant(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(i.poly.eval_scalar(c(7.0, -2.0)), c(7.0, -2.0));

        assert_eq!(
            lagrange_interpolant(&[c(1.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]),
            Err(Error::DuplicatePoints(0, 1))
        );
    }

    #[test]
    fn oracle_examples() {
        let tol = Tolerances::default();
        let d = ComplexMatrix::from_real_diag(&[1.0, 4.0]);
        let o = cfc_oracle(&Builtin::Sqrt.function(ScalarRing::NNReal), &d, ScalarRing::NNReal, tol).unwrap();
        assert!(o.dist(&ComplexMatrix::from_real_diag(&[1.0, 2.0])) < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for ring in ScalarRing::ALL {
            let a = sample::random_for_ring(&mut rng, 5, ring, 1.0);
            let o = cfc_oracle(&ScalarFunction::identity(ring), &a, ring, tol).unwrap();
            assert!(o.dist(&a) < 1e-10);
            let k = c(2.0, 0.0);
            let o = cfc_oracle(&ScalarFunction::constant(k, ring), &a, ring, tol).unwrap();
            assert!(o.dist(&ComplexMatrix::identity(5).scale(k)) < 1e-10);
        }
    }

    #[test]
    fn oracle_declines_clustered_spectra() {
        let a = ComplexMatrix::from_real_diag(&[0.0, 1.0, 1.0 + 1e-7]);
        let err = cfc_oracle(&ScalarFunction::identity(ScalarRing::Real), &a, ScalarRing::Real, Tolerances::default());
        assert!(matches!(err, Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn laws_on_diagonal_nnreal() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let r = check_laws(&a, &Builtin::Sqrt.function(ScalarRing::NNReal), &Builtin::Exp.function(ScalarRing::NNReal), ScalarRing::NNReal, Tolerances::default());
        assert!(r.passed(), "{}", r.table());
        assert_eq!(r.get("oracle").unwrap().status, LawStatus::Pass);
        assert_eq!(r.get("unital_nonunital").unwrap().status, LawStatus::Pass);
    }

    #[test]
    fn laws_on_non_normal_input_only_check_totality() {
        let a = ComplexMatrix::unit(2, 0, 1);
        let f = ScalarFunction::complex(|z| z.exp());
        let r = check_laws(&a, &f, &f, ScalarRing::Complex, Tolerances::default());
        assert!(r.passed());
        assert_eq!(r.get("junk_totality").unwrap().status, LawStatus::Pass);
        assert_eq!(r.count(LawStatus::Pass), 1);
        assert_eq!(r.count(LawStatus::Skipped), r.entries.len() - 1);
    }

    #[test]
    fn laws_on_zero_matrix() {
        let f = ScalarFunction::real(|x| x * x + 2.0 * x);
        let g = ScalarFunction::real(f64::cos);
        let r = check_laws(&ComplexMatrix::zeros(3), &f, &g, ScalarRing::Real, Tolerances::default());
        assert!(r.passed(), "{}", r.table());
        assert!(cfc(&f, &ComplexMatrix::zeros(3), ScalarRing::Real, Tolerances::default()).value.is_zero());
    }

    #[test]
    fn aggregate_keeps_worst() {
        let mut a = LawReport::default();
        a.record("add", 1e-12, 1e-9);
        a.skip("oracle", 1e-8, "gap");
        let mut b = LawReport::default();
        b.record("add", 1e-3, 1e-9);
        b.record("oracle", 1e-10, 1e-8);
        let m = LawReport::aggregate([&a, &b]);
        assert_eq!(m.get("add").unwrap().status, LawStatus::Fail);
        assert_eq!(m.get("add").unwrap().residual, Some(1e-3));
        assert_eq!(m.get("oracle").unwrap().status, LawStatus::Pass);
        assert!(!m.passed());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn interpolant_hits_nodes(seed in any::<u64>(), k in 1usize..=8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let nodes = sample::random_separated_spectrum(&mut rng, k, ScalarRing::Complex, 1.0, 0.05);
            let values = sample::random_complex_spectrum(&mut rng, k, 1.0);
            let i = lagrange_interpolant(&nodes, &values).unwrap();
            prop_assert!(i.max_residual <= 1e-12);
        }

        #[test]
        fn poly_eval_matches_calculus(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = sample::random_normal(&mut rng, n, 1.0);
            let mut terms = Vec::new();
            for k in 0..=4u32 {
                for m in 0..=(4 - k) {
                    terms.push((k, m, Complex64::new(rand::Rng::random_range(&mut rng, -1.0..1.0), rand::Rng::random_range(&mut rng, -1.0..1.0))));
                }
            }
            let p = StarPolynomial::new(terms);
            let direct = poly_eval(&p, &a, 1e-9).unwrap();
            let via_cfc = cfc(&p.to_function(ScalarRing::Complex), &a, ScalarRing::Complex, Tolerances::default()).value;
            prop_assert!(direct.dist(&via_cfc) <= 1e-9 * direct.operator_norm().max(1.0));
        }
    }
}
