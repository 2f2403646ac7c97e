//! Seeded random inputs for law checks and tests: Haar unitaries, normal
//! matrices with prescribed spectra, and a family of scalar functions per ring.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cfc::ScalarFunction;
use crate::matrix::ComplexMatrix;
use crate::oracle::StarPolynomial;
use crate::scalars::{Scalar, ScalarRing};
use crate::unitization::UnitizationElement;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Complex Ginibre matrix (i.i.d. standard complex Gaussian entries).
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| gaussian(rng))
}

/// Haar unitary: Gram–Schmidt (QR with positive `R` diagonal) of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let c: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Points uniform in the disk of radius `scale`.
pub fn random_complex_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> Vec<Scalar> {
    (0..n)
        .map(|_| {
            let r = scale * rng.random::<f64>().sqrt();
            let t = rng.random::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, t)
        })
        .collect()
}

/// Points uniform in `[-scale, scale]`.
pub fn random_real_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> Vec<Scalar> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-scale..=scale), 0.0))
        .collect()
}

/// Points uniform in `[0, scale]`.
pub fn random_nonneg_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> Vec<Scalar> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(0.0..=scale), 0.0))
        .collect()
}

pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, ring: ScalarRing, scale: f64) -> Vec<Scalar> {
    match ring {
        ScalarRing::Complex => random_complex_spectrum(rng, n, scale),
        ScalarRing::Real => random_real_spectrum(rng, n, scale),
        ScalarRing::NNReal => random_nonneg_spectrum(rng, n, scale),
    }
}

fn min_gap(points: &[Scalar]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            gap = gap.min((p - q).norm());
        }
    }
    gap
}

/// Rejection-sampled spectrum whose points are pairwise at least `min_sep` apart.
pub fn random_separated_spectrum<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    ring: ScalarRing,
    scale: f64,
    min_sep: f64,
) -> Vec<Scalar> {
    loop {
        let pts = random_spectrum(rng, n, ring, scale);
        if min_gap(&pts) >= min_sep {
            return pts;
        }
    }
}

pub fn with_spectrum<R: Rng + ?Sized>(rng: &mut R, lambda: &[Scalar]) -> ComplexMatrix {
    random_unitary(rng, lambda.len()).conjugate_diag(lambda)
}

pub fn random_normal<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    let lambda = random_complex_spectrum(rng, n, scale);
    with_spectrum(rng, &lambda)
}

pub fn random_selfadjoint<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    let lambda = random_real_spectrum(rng, n, scale);
    with_spectrum(rng, &lambda).hermitian_part()
}

pub fn random_nonneg<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    let lambda = random_nonneg_spectrum(rng, n, scale);
    with_spectrum(rng, &lambda).hermitian_part()
}

/// A matrix satisfying the predicate of `ring`.
pub fn random_for_ring<R: Rng + ?Sized>(rng: &mut R, n: usize, ring: ScalarRing, scale: f64) -> ComplexMatrix {
    match ring {
        ScalarRing::Complex => random_normal(rng, n, scale),
        ScalarRing::Real => random_selfadjoint(rng, n, scale),
        ScalarRing::NNReal => random_nonneg(rng, n, scale),
    }
}

/// Real symmetric matrix with spectrum in `[-scale, scale]`.
pub fn random_real_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> crate::matrix::RealMatrix {
    let g = crate::matrix::RealMatrix::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let sym = crate::matrix::RealMatrix::from_fn(n, |i, j| 0.5 * (g.get(i, j) + g.get(j, i)));
    let s = sym.as_slice().iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    crate::matrix::RealMatrix::from_fn(n, |i, j| sym.get(i, j) * scale / (s * n as f64))
}

pub fn random_unitization<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UnitizationElement {
    UnitizationElement::new(gaussian(rng), random_matrix(rng, n))
}

fn coeffs<R: Rng + ?Sized>(rng: &mut R, k: usize, real: bool) -> Vec<Scalar> {
    (0..k)
        .map(|_| {
            let z = gaussian(rng);
            if real {
                Complex64::new(z.re, 0.0)
            } else {
                z
            }
        })
        .collect()
}

/// A random function from a small family valid on `ring` (maps the ring to itself).
pub fn random_function<R: Rng + ?Sized>(rng: &mut R, ring: ScalarRing) -> ScalarFunction {
    match ring {
        ScalarRing::Complex => match rng.random_range(0..4) {
            0 => {
                let mut terms = Vec::new();
                for k in 0..=2u32 {
                    for m in 0..=(2 - k) {
                        terms.push((k, m, gaussian(rng)));
                    }
                }
                let p = StarPolynomial::new(terms);
                let name = format!("star poly {p}");
                p.to_function(ScalarRing::Complex).named(name)
            }
            1 => {
                let c = gaussian(rng);
                ScalarFunction::complex(move |z| (c * z).exp()).named(format!("exp({c}·z)"))
            }
            2 => {
                let c = gaussian(rng);
                ScalarFunction::complex(move |z| z.norm_sqr() + c * z.conj()).named(format!("|z|² + ({c})·z̄"))
            }
            _ => {
                let c = gaussian(rng);
                ScalarFunction::complex(move |z| c * z.sin()).named(format!("({c})·sin z"))
            }
        },
        ScalarRing::Real => match rng.random_range(0..5) {
            0 => {
                let c = coeffs(rng, 4, true);
                let p = StarPolynomial::from_coefficients(&c);
                let name = format!("poly {p}");
                p.to_function(ScalarRing::Real).named(name)
            }
            1 => {
                let c: f64 = rng.random_range(-1.0..1.0);
                ScalarFunction::real(move |x| (c * x).exp()).named(format!("exp({c}·x)"))
            }
            2 => {
                let c: f64 = rng.random_range(-1.0..1.0);
                ScalarFunction::real(move |x| x.abs() + c).named(format!("|x| + {c}"))
            }
            3 => {
                let (c, d): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                ScalarFunction::real(move |x| c * x.sin() + d * x.cos()).named(format!("{c}·sin x + {d}·cos x"))
            }
            _ => {
                let c: f64 = rng.random_range(0.5..2.0);
                ScalarFunction::real(move |x| c * x.max(0.0)).named(format!("{c}·max(x, 0)"))
            }
        },
        ScalarRing::NNReal => match rng.random_range(0..5) {
            0 => {
                let c: Vec<Scalar> = (0..3).map(|_| Complex64::new(rng.random_range(0.0..1.5), 0.0)).collect();
                let p = StarPolynomial::from_coefficients(&c);
                let name = format!("poly {p}");
                p.to_function(ScalarRing::NNReal).named(name)
            }
            1 => {
                let c: f64 = rng.random_range(0.5..2.0);
                ScalarFunction::nnreal(move |x| c * x.sqrt()).named(format!("{c}·sqrt x"))
            }
            2 => {
                let c: f64 = rng.random_range(0.1..1.5);
                ScalarFunction::nnreal(move |x| (-c * x).exp()).named(format!("exp(-{c}·x)"))
            }
            3 => {
                let t: f64 = rng.random_range(0.3..2.0);
                ScalarFunction::nnreal(move |x| x.powf(t)).named(format!("x^{t}"))
            }
            _ => ScalarFunction::nnreal(|x| x / (1.0 + x)).named("x/(1+x)"),
        },
    }
}

/// A random function from the family of `ring` that vanishes at 0.
pub fn random_vanishing_function<R: Rng + ?Sized>(rng: &mut R, ring: ScalarRing) -> ScalarFunction {
    let f = random_function(rng, ring);
    let f0 = f.eval(Complex64::new(0.0, 0.0)).unwrap_or_default();
    let name = format!("{} - f(0)", f.name().unwrap_or("f"));
    match ring {
        ScalarRing::NNReal => {
            // x ↦ x·g(x) keeps nonnegativity.
            let id = ScalarFunction::identity(ring);
            id.mul(&f).named(format!("x·({})", f.name().unwrap_or("f")))
        }
        _ => f
            .add(&ScalarFunction::constant(-f0, ring))
            .named(name),
    }
}
