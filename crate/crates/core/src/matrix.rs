//! Dense square complex matrices: the concrete C*-algebra `M_n(ℂ)`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::jacobi_hermitian;
use crate::error::Error;
use crate::scalars::ScalarRing;

/// Floor for relative residual denominators so that the zero matrix passes
/// every predicate exactly.
pub const EPS_FLOOR: f64 = 1e-300;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// An `n × n` complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// Wire format: `{"n": <int>, "entries": [[re, im], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self, Error> {
        if m.n == 0 {
            return Err(Error::InvalidMatrix("n: dimension must be positive".into()));
        }
        let expected = m.n.checked_mul(m.n).ok_or_else(|| Error::InvalidMatrix("n: too large".into()))?;
        if m.entries.len() != expected {
            return Err(Error::InvalidMatrix(format!(
                "entries: expected {} elements for n = {}, found {}",
                expected,
                m.n,
                m.entries.len()
            )));
        }
        let data = m
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        Ok(Self { n: m.n, data })
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            n: m.n,
            entries: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![ONE; n])
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<_> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Build from row-major data; fails when the length is not a positive square.
    pub fn from_vec(n: usize, data: Vec<Complex64>) -> Result<Self, Error> {
        if n == 0 || data.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for n = {n}, found {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        Self::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Matrix unit `e_ij` in dimension `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = ONE;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius inner product `trace(self* · other)`.
    pub fn frobenius_inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        operator_norm(self)
    }

    /// Operator norm of `self - other`.
    pub fn dist(&self, other: &Self) -> f64 {
        operator_norm(&(self - other))
    }

    /// `(self + self*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `(self - self*) / 2i`, so that `self = h + i·k`.
    pub fn skew_part(&self) -> Self {
        let half_over_i = Complex64::new(0.0, -0.5);
        Self::from_fn(self.n, |i, j| (self[(i, j)] - self[(j, i)].conj()) * half_over_i)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Add `c·I` in place.
    pub fn add_scalar(&self, c: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] += c;
        }
        m
    }

    /// `self · diag(d) · self*`, used to assemble spectral reconstructions.
    pub fn conjugate_diag(&self, d: &[Complex64]) -> Self {
        let n = self.n;
        assert_eq!(d.len(), n);
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, &dk) in d.iter().enumerate() {
                    if dk != ZERO {
                        acc += self[(i, k)] * dk * self[(j, k)].conj();
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// Inverse by LU with partial pivoting; `None` when a pivot falls below
    /// `rel_tol · max|entry|`.
    pub fn inverse(&self, rel_tol: f64) -> Option<Self> {
        let n = self.n;
        let scale = self.max_abs();
        if scale == 0.0 || !self.is_finite() {
            return None;
        }
        let mut lu = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| lu[(a, col)].norm().total_cmp(&lu[(b, col)].norm()))
                .unwrap();
            if lu[(pivot, col)].norm() <= rel_tol * scale {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    lu.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = lu[(col, col)];
            for row in (col + 1)..n {
                let factor = lu[(row, col)] / p;
                if factor == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (l, r) = (lu[(col, j)], inv[(col, j)]);
                    lu[(row, j)] -= factor * l;
                    inv[(row, j)] -= factor * r;
                }
            }
        }
        for col in (0..n).rev() {
            let p = lu[(col, col)];
            for j in 0..n {
                let mut acc = inv[(col, j)];
                for k in (col + 1)..n {
                    acc -= lu[(col, k)] * inv[(k, j)];
                }
                inv[(col, j)] = acc / p;
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        -&self
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, c: Complex64) -> ComplexMatrix {
        self.scale(c)
    }
}

/// A real square matrix, the user-facing type for real-scalar calculus.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        Self {
            n,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| (0..self.n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| Complex64::new(self.get(i, j), 0.0))
    }

    pub(crate) fn from_complex_real_part(m: &ComplexMatrix) -> Self {
        Self::from_fn(m.n(), |i, j| m[(i, j)].re)
    }
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

/// Operator norm of a Hermitian matrix: `max |λ|`.
pub(crate) fn hermitian_norm(h: &ComplexMatrix) -> f64 {
    let sym = h.hermitian_part();
    jacobi_hermitian(&sym)
        .values
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Largest singular value, `sqrt(λ_max(a*·a))`.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    if !a.is_finite() {
        return f64::NAN;
    }
    // Pre-scaling keeps a*a away from overflow and underflow.
    let s = a.max_abs();
    let b = a.scale_real(1.0 / s);
    let gram = (&b.adjoint() * &b).hermitian_part();
    let top = jacobi_hermitian(&gram)
        .values
        .iter()
        .fold(0.0f64, |m, &v| m.max(v));
    s * top.max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PredicateKind {
    Normal,
    Selfadjoint,
    Nonneg,
}

impl PredicateKind {
    pub fn for_ring(ring: ScalarRing) -> Self {
        match ring {
            ScalarRing::Complex => PredicateKind::Normal,
            ScalarRing::Real => PredicateKind::Selfadjoint,
            ScalarRing::NNReal => PredicateKind::Nonneg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredicateReport {
    pub predicate: PredicateKind,
    pub holds: bool,
    pub residual: f64,
    pub tol_used: f64,
}

impl PredicateReport {
    fn new(predicate: PredicateKind, residual: f64, tol: f64) -> Self {
        Self {
            predicate,
            // NaN residuals fail.
            holds: residual <= tol,
            residual,
            tol_used: tol,
        }
    }
}

/// `a*a = aa*`, residual `‖a*a − aa*‖ / ‖a‖²`.
pub fn is_star_normal(a: &ComplexMatrix, tol: f64) -> PredicateReport {
    if !a.is_finite() {
        return PredicateReport::new(PredicateKind::Normal, f64::NAN, tol);
    }
    let s = a.max_abs();
    if s == 0.0 {
        return PredicateReport::new(PredicateKind::Normal, 0.0, tol);
    }
    let b = a.scale_real(1.0 / s);
    let bs = b.adjoint();
    let comm = &(&bs * &b) - &(&b * &bs);
    let norm_sq = operator_norm(&b).powi(2);
    let residual = hermitian_norm(&comm) / norm_sq.max(EPS_FLOOR);
    PredicateReport::new(PredicateKind::Normal, residual, tol)
}

/// `a* = a`, residual `‖a − a*‖ / ‖a‖`.
pub fn is_selfadjoint(a: &ComplexMatrix, tol: f64) -> PredicateReport {
    if !a.is_finite() {
        return PredicateReport::new(PredicateKind::Selfadjoint, f64::NAN, tol);
    }
    let norm = operator_norm(a);
    let residual = operator_norm(&(a - &a.adjoint())) / norm.max(EPS_FLOOR);
    PredicateReport::new(PredicateKind::Selfadjoint, residual, tol)
}

/// Selfadjoint with every eigenvalue `≥ −tol·‖a‖`.
pub fn is_nonneg(a: &ComplexMatrix, tol: f64) -> PredicateReport {
    let sa = is_selfadjoint(a, tol);
    if !sa.residual.is_finite() {
        return PredicateReport::new(PredicateKind::Nonneg, f64::NAN, tol);
    }
    let values = jacobi_hermitian(&a.hermitian_part()).values;
    let norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let negativity = (-min).max(0.0) / norm.max(EPS_FLOOR);
    PredicateReport::new(PredicateKind::Nonneg, sa.residual.max(negativity), tol)
}

/// The predicate a matrix must satisfy for the calculus over `ring`.
pub fn ring_predicate(a: &ComplexMatrix, ring: ScalarRing, tol: f64) -> PredicateReport {
    match ring {
        ScalarRing::Complex => is_star_normal(a, tol),
        ScalarRing::Real => is_selfadjoint(a, tol),
        ScalarRing::NNReal => is_nonneg(a, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_examples() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(a.adjoint(), ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]));
        let i = ComplexMatrix::from_diag(&[c(0.0, 1.0)]);
        assert_eq!(i.adjoint(), ComplexMatrix::from_diag(&[c(0.0, -1.0)]));
        assert_eq!(ComplexMatrix::identity(3).adjoint(), ComplexMatrix::identity(3));
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&ComplexMatrix::from_real_diag(&[1.0, -3.0])) - 3.0).abs() < 1e-14);
        assert!((operator_norm(&ComplexMatrix::identity(4)) - 1.0).abs() < 1e-14);
        let nil = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert!((operator_norm(&nil) - 2.0).abs() < 1e-14);
        assert_eq!(operator_norm(&ComplexMatrix::zeros(3)), 0.0);
    }

    #[test]
    fn normality_examples() {
        assert!(is_star_normal(&ComplexMatrix::from_diag(&[c(1.0, 1.0), c(2.0, 0.0)]), TOL).holds);
        let nil = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let r = is_star_normal(&nil, TOL);
        assert!(!r.holds);
        assert!((r.residual - 1.0).abs() < 1e-12);
        let zero = is_star_normal(&ComplexMatrix::zeros(2), TOL);
        assert!(zero.holds && zero.residual == 0.0);
    }

    #[test]
    fn selfadjoint_examples() {
        assert!(is_selfadjoint(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]), TOL).holds);
        assert!(!is_selfadjoint(&ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]), TOL).holds);
        let zero = is_selfadjoint(&ComplexMatrix::zeros(2), TOL);
        assert!(zero.holds && zero.residual == 0.0);
    }

    #[test]
    fn nonneg_examples() {
        assert!(is_nonneg(&ComplexMatrix::from_real_diag(&[0.0, 3.0]), TOL).holds);
        assert!(!is_nonneg(&ComplexMatrix::from_real_diag(&[1.0, -1.0]), TOL).holds);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let b = sample::random_matrix(&mut rng, n);
            assert!(is_nonneg(&(&b.adjoint() * &b), TOL).holds);
        }
    }

    #[test]
    fn non_finite_input_fails_predicates() {
        let mut a = ComplexMatrix::identity(2);
        a[(0, 1)] = c(f64::NAN, 0.0);
        assert!(!is_star_normal(&a, TOL).holds);
        assert!(!is_selfadjoint(&a, TOL).holds);
        assert!(!is_nonneg(&a, TOL).holds);
    }

    #[test]
    fn inverse_matches_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = sample::random_matrix(&mut rng, 5).add_scalar(c(3.0, 0.0));
        let inv = a.inverse(1e-12).unwrap();
        assert!((&a * &inv).dist(&ComplexMatrix::identity(5)) < 1e-12);
        assert!(ComplexMatrix::from_real_diag(&[1.0, 0.0]).inverse(1e-12).is_none());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.1, -1.0 / 3.0), c(1e-300, 2.5)],
            vec![c(-0.0, 7.0), c(std::f64::consts::PI, 0.0)],
        ]);
        let s = serde_json::to_string(&a).unwrap();
        let b: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a.as_slice().len(), b.as_slice().len());
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
        let err = serde_json::from_str::<ComplexMatrix>(r#"{"n": 2, "entries": [[1,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("entries"), "{err}");
        let err = serde_json::from_str::<ComplexMatrix>(r#"{"entries": []}"#).unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"n": 0, "entries": []}"#).is_err());
    }

    #[test]
    fn predicate_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let h = sample::random_selfadjoint(&mut rng, n, 2.0);
            assert!(is_selfadjoint(&h, TOL).holds);
            assert!(is_star_normal(&h, TOL).holds);
            let p = sample::random_nonneg(&mut rng, n, 2.0);
            assert!(is_nonneg(&p, TOL).holds);
            assert!(is_selfadjoint(&p, TOL).holds);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn c_star_identity(seed in any::<u64>(), n in 1usize..=7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = sample::random_matrix(&mut rng, n);
            let norm = operator_norm(&a);
            let gram = operator_norm(&(&a.adjoint() * &a));
            prop_assert!((gram - norm * norm).abs() <= 1e-12 * norm * norm);
        }

        #[test]
        fn adjoint_is_antimultiplicative_involution(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = sample::random_matrix(&mut rng, n);
            let b = sample::random_matrix(&mut rng, n);
            prop_assert_eq!(a.adjoint().adjoint(), a.clone());
            let lhs = (&a * &b).adjoint();
            let rhs = &b.adjoint() * &a.adjoint();
            prop_assert!(lhs.dist(&rhs) <= 1e-13 * (1.0 + lhs.operator_norm()));
        }

        #[test]
        fn selfadjoint_iff_normal_with_real_spectrum(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Normal matrix whose spectrum is real for half of the draws.
            let real = seed % 2 == 0;
            let a = if real {
                sample::random_selfadjoint(&mut rng, n, 1.0)
            } else {
                sample::random_normal(&mut rng, n, 1.0)
            };
            let normal = is_star_normal(&a, TOL).holds;
            let dec = crate::eigen::normal_spectral_decomposition(&a, &crate::Tolerances::default()).unwrap();
            let real_spectrum = dec.lambda.iter().all(|l| l.im.abs() <= 1e-9 * a.operator_norm().max(1e-300));
            prop_assert_eq!(is_selfadjoint(&a, TOL).holds, normal && real_spectrum);
        }
    }
}
