//! Spectral decompositions of Hermitian and normal matrices.
//!
//! The numeric kernel is cyclic complex Jacobi. Normal matrices are split as
//! `a = h + i·k` with commuting Hermitian parts, which are diagonalized one
//! after the other: first `h`, then `k` compressed to each near-degenerate
//! eigenspace of `h`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{is_selfadjoint, is_star_normal, ComplexMatrix, EPS_FLOOR};
use crate::scalars::{Scalar, ScalarRing};
use crate::tolerance::Tolerances;

const MAX_SWEEPS: usize = 60;
const OFF_DIAGONAL_REL: f64 = 1e-14;

/// `a = u · diag(lambda) · u*` with `u` unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub u: ComplexMatrix,
    pub lambda: Vec<Scalar>,
    /// `‖a − u·diag(λ)·u*‖ / ‖a‖` for the source matrix.
    pub residual: f64,
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.u.conjugate_diag(&self.lambda)
    }

    /// Assemble `u · diag(values) · u*`.
    pub fn apply_diag(&self, values: &[Scalar]) -> ComplexMatrix {
        self.u.conjugate_diag(values)
    }

    pub fn unitarity_defect(&self) -> f64 {
        (&self.u.adjoint() * &self.u).dist(&ComplexMatrix::identity(self.n()))
    }
}

/// Finite spectrum: distinct representatives with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteredSpectrum {
    pub points: Vec<Scalar>,
    pub multiplicities: Vec<usize>,
    pub cluster_tol: f64,
    /// Cluster index of every input eigenvalue.
    pub labels: Vec<usize>,
}

impl ClusteredSpectrum {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest distance between two distinct points (`∞` for one point).
    pub fn min_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                gap = gap.min((p - q).norm());
            }
        }
        gap
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                d = d.max((p - q).norm());
            }
        }
        d
    }
}

pub(crate) struct JacobiOutput {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
    pub converged: bool,
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi on a Hermitian matrix. Only meaningful for Hermitian input;
/// eigenvalues come back ascending with matching eigenvector columns.
pub(crate) fn jacobi_hermitian(h: &ComplexMatrix) -> JacobiOutput {
    let n = h.n();
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let mut converged = scale == 0.0 || n == 1;
    let mut sweeps = 0;

    while !converged && sweeps < MAX_SWEEPS {
        if off_diagonal_mass(&a) <= OFF_DIAGONAL_REL * scale {
            converged = true;
            break;
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let g = 100.0 * mag;
                if sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + tau.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // G = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged && off_diagonal_mass(&a) <= OFF_DIAGONAL_REL * scale {
        converged = true;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    JacobiOutput {
        values,
        vectors,
        sweeps,
        converged,
    }
}

fn reconstruction_residual(a: &ComplexMatrix, u: &ComplexMatrix, lambda: &[Scalar]) -> f64 {
    let diff = a - &u.conjugate_diag(lambda);
    diff.operator_norm() / a.operator_norm().max(EPS_FLOOR)
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues real and ascending.
pub fn hermitian_eigen(h: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition> {
    let report = is_selfadjoint(h, tol);
    if !report.holds {
        return Err(Error::NotSelfadjoint {
            residual: report.residual,
        });
    }
    let sym = h.hermitian_part();
    let out = jacobi_hermitian(&sym);
    if !out.converged {
        return Err(Error::NoConvergence { sweeps: out.sweeps });
    }
    let lambda: Vec<Scalar> = out.values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let residual = reconstruction_residual(h, &out.vectors, &lambda);
    Ok(SpectralDecomposition {
        u: out.vectors,
        lambda,
        residual,
    })
}

/// Indices grouped into runs whose consecutive sorted values differ by at most `tol`.
fn runs(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Diagonalize `m` compressed onto `cols` of `u`, rotating those columns in
/// place. Returns the compressed eigenvalues (ascending) in the new column order.
fn diagonalize_on_columns(
    u: &mut ComplexMatrix,
    cols: &[usize],
    m: &ComplexMatrix,
) -> Result<Vec<f64>> {
    let n = u.n();
    let k = cols.len();
    let mu = m * &*u;
    let block = ComplexMatrix::from_fn(k, |i, j| {
        (0..n).map(|r| u[(r, cols[i])].conj() * mu[(r, cols[j])]).sum()
    });
    let out = jacobi_hermitian(&block.hermitian_part());
    if !out.converged {
        return Err(Error::NoConvergence { sweeps: out.sweeps });
    }
    let old: Vec<Vec<Complex64>> = cols.iter().map(|&c| u.column(c)).collect();
    for (j, &cj) in cols.iter().enumerate() {
        for r in 0..n {
            u[(r, cj)] = (0..k).map(|l| old[l][r] * out.vectors[(l, j)]).sum();
        }
    }
    Ok(out.values)
}

/// Unitary diagonalization of a normal matrix.
pub fn normal_spectral_decomposition(
    a: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<SpectralDecomposition> {
    let report = is_star_normal(a, tol.tol);
    if !report.holds {
        return Err(Error::NotNormal {
            residual: report.residual,
        });
    }
    let n = a.n();
    if n == 1 {
        return Ok(SpectralDecomposition {
            u: ComplexMatrix::identity(1),
            lambda: vec![a[(0, 0)]],
            residual: 0.0,
        });
    }
    let h = a.hermitian_part();
    let k = a.skew_part();
    let ctol = tol.cluster_radius(a.operator_norm());

    let first = jacobi_hermitian(&h);
    if !first.converged {
        return Err(Error::NoConvergence { sweeps: first.sweeps });
    }
    let mut u = first.vectors;
    for run in runs(&first.values, ctol) {
        if run.len() < 2 {
            continue;
        }
        let cols: Vec<usize> = run.collect();
        let kvals = diagonalize_on_columns(&mut u, &cols, &k)?;
        // Second pass: h restricted to eigenspaces of k that are still degenerate.
        for sub in runs(&kvals, ctol) {
            if sub.len() >= 2 {
                let sub_cols: Vec<usize> = sub.map(|i| cols[i]).collect();
                diagonalize_on_columns(&mut u, &sub_cols, &h)?;
            }
        }
    }

    let au = a * &u;
    let mut pairs: Vec<(Scalar, usize)> = (0..n)
        .map(|j| {
            let rq: Complex64 = (0..n).map(|r| u[(r, j)].conj() * au[(r, j)]).sum();
            (rq, j)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.re.total_cmp(&y.0.re).then(x.0.im.total_cmp(&y.0.im)));
    let lambda: Vec<Scalar> = pairs.iter().map(|p| p.0).collect();
    let u = ComplexMatrix::from_fn(n, |r, c| u[(r, pairs[c].1)]);
    let residual = reconstruction_residual(a, &u, &lambda);
    Ok(SpectralDecomposition { u, lambda, residual })
}

/// Decomposition matched to a scalar ring: Hermitian solver for ℝ and ℝ≥0,
/// normal solver for ℂ. Does not check the ℝ≥0 sign condition.
pub fn decompose_for_ring(
    a: &ComplexMatrix,
    ring: ScalarRing,
    tol: &Tolerances,
) -> Result<SpectralDecomposition> {
    match ring {
        ScalarRing::Complex => normal_spectral_decomposition(a, tol),
        ScalarRing::Real | ScalarRing::NNReal => hermitian_eigen(a, tol.tol),
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut root = i;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = i;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Single-linkage clustering of eigenvalues within `cluster_tol`.
///
/// Representatives are cluster means; points come back sorted by `(re, im)`.
pub fn cluster_eigenvalues(lambda: &[Scalar], cluster_tol: f64) -> ClusteredSpectrum {
    let n = lambda.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if (lambda[i] - lambda[j]).norm() <= cluster_tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj] = ri;
                }
            }
        }
    }
    loop {
        let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        let means: Vec<Scalar> = roots
            .iter()
            .map(|&r| {
                let members: Vec<Scalar> = (0..n)
                    .filter(|&i| find(&mut parent, i) == r)
                    .map(|i| lambda[i])
                    .collect();
                members.iter().sum::<Scalar>() / members.len() as f64
            })
            .collect();
        // Means of separate clusters may still fall within the radius.
        let mut merged = false;
        'outer: for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if (means[i] - means[j]).norm() <= cluster_tol {
                    parent[roots[j]] = roots[i];
                    merged = true;
                    break 'outer;
                }
            }
        }
        if merged {
            continue;
        }
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by(|&i, &j| {
            means[i]
                .re
                .total_cmp(&means[j].re)
                .then(means[i].im.total_cmp(&means[j].im))
        });
        let points: Vec<Scalar> = order.iter().map(|&i| means[i]).collect();
        let mut labels = vec![0; n];
        let mut multiplicities = vec![0; roots.len()];
        for (i, label) in labels.iter_mut().enumerate() {
            let root = find(&mut parent, i);
            let raw = roots.iter().position(|&r| r == root).unwrap();
            *label = order.iter().position(|&o| o == raw).unwrap();
            multiplicities[*label] += 1;
        }
        return ClusteredSpectrum {
            points,
            multiplicities,
            cluster_tol,
            labels,
        };
    }
}
