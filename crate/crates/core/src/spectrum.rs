//! Spectra over each scalar ring, quasiregularity and the quasispectrum.
//!
//! The quasispectrum is computed two ways: intrinsically inside a
//! subalgebra (via quasiregularity of `-r⁻¹·a`), and as the spectrum of
//! `(0, a)` in the unitization. The two serve as oracles for each other.

use num_complex::Complex64;
use serde::Serialize;

use crate::eigen::{cluster_eigenvalues, decompose_for_ring, ClusteredSpectrum, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::matrix::{ring_predicate, ComplexMatrix, EPS_FLOOR};
use crate::scalars::{restrict_scalar, Scalar, ScalarRing};
use crate::subalgebra::{subalgebra_contains, StarSubalgebra};
use crate::tolerance::{Tolerances, ZERO_SNAP_REL};
use crate::unitization::{uni_represent, UnitizationElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    Eigen,
    IntrinsicQuasi,
    UnitizationQuasi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub ring: ScalarRing,
    /// Distinct points, restricted to `ring` and embedded in ℂ, sorted by `(re, im)`.
    pub points: Vec<Scalar>,
    pub multiplicities: Vec<usize>,
    pub cluster_tol: f64,
    pub source: SpectrumSource,
}

impl SpectrumResult {
    pub fn contains(&self, z: Scalar, tol: f64) -> bool {
        self.points.iter().any(|p| (p - z).norm() <= tol)
    }

    /// Hausdorff distance between the two point sets.
    pub fn hausdorff(&self, other: &[Scalar]) -> f64 {
        hausdorff(&self.points, other)
    }
}

pub fn hausdorff(a: &[Scalar], b: &[Scalar]) -> f64 {
    let directed = |x: &[Scalar], y: &[Scalar]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    directed(a, b).max(directed(b, a))
}

/// Decomposition plus the clustered, ring-restricted spectrum. Cluster
/// representatives within the clustering radius of 0 are snapped to 0.
pub(crate) struct SpectralData {
    pub decomposition: SpectralDecomposition,
    pub clusters: ClusteredSpectrum,
}

pub(crate) fn spectral_data(a: &ComplexMatrix, ring: ScalarRing, tol: &Tolerances) -> Result<SpectralData> {
    let decomposition = decompose_for_ring(a, ring, tol)?;
    let radius = decomposition.lambda.iter().fold(0.0f64, |m, l| m.max(l.norm()));
    let ctol = tol.cluster_radius(radius);
    let mut clusters = cluster_eigenvalues(&decomposition.lambda, ctol);
    let band = tol.tol * radius.max(1.0);
    let snap = (ZERO_SNAP_REL * radius).min(ctol);
    for p in clusters.points.iter_mut() {
        if p.norm() <= snap {
            *p = Complex64::new(0.0, 0.0);
        }
        *p = restrict_scalar(*p, ring, band)?;
    }
    Ok(SpectralData {
        decomposition,
        clusters,
    })
}

fn check_predicate(a: &ComplexMatrix, ring: ScalarRing, tol: f64) -> Result<()> {
    let report = ring_predicate(a, ring, tol);
    if report.holds {
        Ok(())
    } else {
        Err(Error::PredicateFailure {
            ring,
            residual: report.residual,
        })
    }
}

/// `σ_R(a)`: the eigenvalues of `a`, restricted to `ring`.
pub fn spectrum(a: &ComplexMatrix, ring: ScalarRing, tol: Tolerances) -> Result<SpectrumResult> {
    check_predicate(a, ring, tol.tol)?;
    let data = spectral_data(a, ring, &tol)?;
    Ok(SpectrumResult {
        ring,
        points: data.clusters.points,
        multiplicities: data.clusters.multiplicities,
        cluster_tol: data.clusters.cluster_tol,
        source: SpectrumSource::Eigen,
    })
}

/// `y` with `x + y + xy = 0 = y + x + yx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiregularWitness {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    /// Larger of the two residual norms.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiregularCheck {
    pub quasiregular: bool,
    pub witness: Option<QuasiregularWitness>,
    /// Ambient route: `I + x` invertible and `(I + x)⁻¹ − I` in the subalgebra.
    pub ambient_quasiregular: bool,
}

/// Solve a small Hermitian positive semidefinite system by Gaussian
/// elimination with partial pivoting; negligible pivots zero their unknown.
/// Pivots at or below `cutoff` are treated as zero directions.
fn solve_normal_equations(mut g: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>, cutoff: f64) -> Vec<Complex64> {
    let k = rhs.len();
    let mut skip = vec![false; k];
    for col in 0..k {
        let pivot = (col..k).max_by(|&a, &b| g[a][col].norm().total_cmp(&g[b][col].norm())).unwrap();
        if g[pivot][col].norm() <= cutoff {
            skip[col] = true;
            continue;
        }
        g.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in (col + 1)..k {
            let factor = g[row][col] / g[col][col];
            let pivot_row = g[col].clone();
            for (x, v) in g[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * v;
            }
            let r = rhs[col];
            rhs[row] -= factor * r;
        }
    }
    let mut c = vec![Complex64::new(0.0, 0.0); k];
    for col in (0..k).rev() {
        if skip[col] {
            continue;
        }
        let mut acc = rhs[col];
        for j in (col + 1)..k {
            acc -= g[col][j] * c[j];
        }
        c[col] = acc / g[col][col];
    }
    c
}

/// Ceiling on the accepted residual, below the floor of 1 that a
/// non-quasiregular normal element cannot get under.
const QUASI_RESIDUAL_CAP: f64 = 0.5;

/// Quasiregularity of `x` inside `b`, with an independent ambient cross-check.
pub fn is_quasiregular(b: &StarSubalgebra, x: &ComplexMatrix, tol: f64) -> Result<QuasiregularCheck> {
    let membership = subalgebra_contains(b, x, tol)?;
    if !membership.contained {
        return Err(Error::NotInSubalgebra {
            residual: membership.residual,
        });
    }
    let n = x.n();
    let one_plus_x = x.add_scalar(Complex64::new(1.0, 0.0));
    // Columns (I + x)·b_j of the least-squares problem in basis coordinates.
    let cols: Vec<ComplexMatrix> = b.basis().iter().map(|bj| &one_plus_x * bj).collect();
    let neg_x = -x;
    let gram: Vec<Vec<Complex64>> = cols
        .iter()
        .map(|ci| cols.iter().map(|cj| ci.frobenius_inner(cj)).collect())
        .collect();
    let rhs: Vec<Complex64> = cols.iter().map(|ci| ci.frobenius_inner(&neg_x)).collect();
    // Basis elements are orthonormal, so Gram pivots measure squared
    // singular values of I + x on B.
    let cutoff = (tol * x.operator_norm().max(1.0)).powi(2);
    let coords = solve_normal_equations(gram, rhs, cutoff);
    let mut y = ComplexMatrix::zeros(n);
    for (bj, cj) in b.basis().iter().zip(&coords) {
        y += &bj.scale(*cj);
    }
    let left = &(x + &y) + &(x * &y);
    let right = &(&y + x) + &(&y * x);
    let residual = left.operator_norm().max(right.operator_norm());
    // For normal x with 1 + x singular along v, v*(x + y + xy) = -v* for
    // every y, so a non-quasiregular x leaves a residual of at least 1.
    let bound = (tol * x.operator_norm().powi(2).max(1.0)).min(QUASI_RESIDUAL_CAP);
    let quasiregular = residual <= bound;

    let pivot_floor = tol * x.operator_norm().max(1.0) / one_plus_x.max_abs().max(EPS_FLOOR);
    let ambient_quasiregular = match one_plus_x.inverse(pivot_floor) {
        Some(inv) => {
            let w = inv.add_scalar(Complex64::new(-1.0, 0.0));
            subalgebra_contains(b, &w, tol)?.contained
        }
        None => false,
    };

    Ok(QuasiregularCheck {
        quasiregular,
        witness: quasiregular.then(|| QuasiregularWitness {
            x: x.clone(),
            y,
            residual,
        }),
        ambient_quasiregular,
    })
}

/// Merge every point within `ctol` of 0 into an exact 0.
///
/// Only used where 0 is known to belong to the set.
fn anchor_zero(points: &mut Vec<Scalar>, multiplicities: &mut Vec<usize>, ctol: f64) {
    let zero = Complex64::new(0.0, 0.0);
    let near: usize = points
        .iter()
        .zip(multiplicities.iter())
        .filter(|(p, _)| p.norm() <= ctol)
        .map(|(_, m)| m)
        .sum();
    if near == 0 {
        return;
    }
    let kept: Vec<(Scalar, usize)> = points
        .iter()
        .copied()
        .zip(multiplicities.iter().copied())
        .filter(|(p, _)| p.norm() > ctol)
        .chain(std::iter::once((zero, near)))
        .collect();
    *points = kept.iter().map(|k| k.0).collect();
    *multiplicities = kept.iter().map(|k| k.1).collect();
    sort_points(points, multiplicities);
}

fn sort_points(points: &mut Vec<Scalar>, multiplicities: &mut Vec<usize>) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].re.total_cmp(&points[j].re).then(points[i].im.total_cmp(&points[j].im)));
    *points = order.iter().map(|&i| points[i]).collect();
    *multiplicities = order.iter().map(|&i| multiplicities[i]).collect();
}

fn insert_zero(points: &mut Vec<Scalar>, multiplicities: &mut Vec<usize>, ctol: f64) {
    let zero = Complex64::new(0.0, 0.0);
    anchor_zero(points, multiplicities, ctol);
    if let Some(i) = points.iter().position(|p| *p == zero) {
        multiplicities[i] += 1;
    } else {
        points.push(zero);
        multiplicities.push(1);
        sort_points(points, multiplicities);
    }
}

/// Quasispectrum of `a` inside `b`: `0` together with every nonzero `r` for
/// which `-r⁻¹·a` is not quasiregular in `b`.
///
/// Candidates are the ambient eigenvalues of `a`; in a matrix algebra the
/// quasispectrum is contained in `σ(a) ∪ {0}`. Multiplicities count `0`
/// once more than its ambient multiplicity, matching the unitization.
pub fn quasispectrum_intrinsic(
    b: &StarSubalgebra,
    a: &ComplexMatrix,
    ring: ScalarRing,
    tol: Tolerances,
) -> Result<SpectrumResult> {
    let membership = subalgebra_contains(b, a, tol.tol)?;
    if !membership.contained {
        return Err(Error::NotInSubalgebra {
            residual: membership.residual,
        });
    }
    check_predicate(a, ring, tol.tol)?;
    let data = spectral_data(a, ring, &tol)?;
    let zero = Complex64::new(0.0, 0.0);
    let ctol = data.clusters.cluster_tol;
    let (mut candidates, mut candidate_mult) = (data.clusters.points.clone(), data.clusters.multiplicities.clone());
    // Points indistinguishable from 0 join it before any test.
    anchor_zero(&mut candidates, &mut candidate_mult, ctol);
    let mut points = Vec::new();
    let mut multiplicities = Vec::new();
    for (&r, &m) in candidates.iter().zip(&candidate_mult) {
        if r == zero {
            points.push(r);
            multiplicities.push(m);
            continue;
        }
        let x = a.scale(-r.inv());
        if !is_quasiregular(b, &x, tol.tol)?.quasiregular {
            points.push(r);
            multiplicities.push(m);
        }
    }
    insert_zero(&mut points, &mut multiplicities, ctol);
    Ok(SpectrumResult {
        ring,
        points,
        multiplicities,
        cluster_tol: data.clusters.cluster_tol,
        source: SpectrumSource::IntrinsicQuasi,
    })
}

/// Quasispectrum as the spectrum of `(0, a)` in the unitization.
pub fn quasispectrum_via_unitization(a: &ComplexMatrix, ring: ScalarRing, tol: Tolerances) -> Result<SpectrumResult> {
    check_predicate(a, ring, tol.tol)?;
    let block = uni_represent(&UnitizationElement::embed(a.clone()));
    let data = spectral_data(&block, ring, &tol)?;
    let (mut points, mut multiplicities) = (data.clusters.points, data.clusters.multiplicities);
    anchor_zero(&mut points, &mut multiplicities, data.clusters.cluster_tol);
    Ok(SpectrumResult {
        ring,
        points,
        multiplicities,
        cluster_tol: data.clusters.cluster_tol,
        source: SpectrumSource::UnitizationQuasi,
    })
}
