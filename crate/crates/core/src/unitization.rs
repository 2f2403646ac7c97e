//! Minimal unitization `A⁺¹ = ℂ × A` with
//! `(z, a)(w, b) = (zw, zb + wa + ab)` and `‖(z, a)‖ = max(|z|, ‖m ↦ zm + am‖)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{operator_norm, ComplexMatrix};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitizationElement {
    pub z: Scalar,
    pub a: ComplexMatrix,
}

impl UnitizationElement {
    pub fn new(z: Scalar, a: ComplexMatrix) -> Self {
        Self { z, a }
    }

    /// The unit `(1, 0)`.
    pub fn unit(n: usize) -> Self {
        Self::new(Complex64::new(1.0, 0.0), ComplexMatrix::zeros(n))
    }

    /// `a ↦ (0, a)`.
    pub fn embed(a: ComplexMatrix) -> Self {
        Self::new(Complex64::new(0.0, 0.0), a)
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// `z·I + a`, the action on `M_n` by left multiplication.
    fn left_action(&self) -> ComplexMatrix {
        self.a.add_scalar(self.z)
    }
}

pub fn uni_mul(x: &UnitizationElement, y: &UnitizationElement) -> Result<UnitizationElement> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            found: y.n(),
        });
    }
    let a = &(&y.a.scale(x.z) + &x.a.scale(y.z)) + &(&x.a * &y.a);
    Ok(UnitizationElement::new(x.z * y.z, a))
}

pub fn uni_star(x: &UnitizationElement) -> UnitizationElement {
    UnitizationElement::new(x.z.conj(), x.a.adjoint())
}

/// `max(|z|, ‖z·I + a‖)`.
pub fn uni_norm(x: &UnitizationElement) -> f64 {
    x.z.norm().max(operator_norm(&x.left_action()))
}

/// The same norm with the left-multiplication map materialized as an
/// `n² × n²` matrix acting on row-major vectorizations of `M_n`.
pub fn uni_norm_map(x: &UnitizationElement) -> f64 {
    let n = x.n();
    let action = x.left_action();
    let mut map = ComplexMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            // Image of the matrix unit e_ij is (zI + a)·e_ij: column i of the
            // action placed in column j.
            let col = i * n + j;
            for r in 0..n {
                map[(r * n + j, col)] = action[(r, i)];
            }
        }
    }
    x.z.norm().max(operator_norm(&map))
}

/// Faithful representation `(z, a) ↦ z·I ⊕ (z·I + a)` as a `2n × 2n` block matrix.
pub fn uni_represent(x: &UnitizationElement) -> ComplexMatrix {
    let n = x.n();
    let action = x.left_action();
    ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) if i == j => x.z,
        (false, false) => action[(i - n, j - n)],
        _ => Complex64::new(0.0, 0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::normal_spectral_decomposition;
    use crate::sample;
    use crate::tolerance::Tolerances;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(x: &UnitizationElement, y: &UnitizationElement, eps: f64) -> bool {
        (x.z - y.z).norm() <= eps && x.a.dist(&y.a) <= eps
    }

    #[test]
    fn multiplication_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = sample::random_matrix(&mut rng, 3);
        let b = sample::random_matrix(&mut rng, 3);
        let w = UnitizationElement::new(c(0.5, -2.0), b.clone());
        assert_eq!(uni_mul(&UnitizationElement::unit(3), &w).unwrap(), w);

        let p = uni_mul(&UnitizationElement::embed(a.clone()), &UnitizationElement::embed(b.clone())).unwrap();
        assert_eq!(p.z, c(0.0, 0.0));
        assert!(p.a.dist(&(&a * &b)) < 1e-14);

        let one = c(1.0, 0.0);
        let p = uni_mul(&UnitizationElement::new(one, a.clone()), &UnitizationElement::new(one, b.clone())).unwrap();
        assert_eq!(p.z, one);
        assert!(p.a.dist(&(&(&a + &b) + &(&a * &b))) < 1e-13);

        assert!(matches!(
            uni_mul(&UnitizationElement::unit(2), &UnitizationElement::unit(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn star_examples() {
        let s = uni_star(&UnitizationElement::new(c(0.0, 1.0), ComplexMatrix::zeros(2)));
        assert_eq!(s.z, c(0.0, -1.0));
        let a = ComplexMatrix::unit(2, 0, 1).scale(c(1.0, 2.0));
        let s = uni_star(&UnitizationElement::embed(a.clone()));
        assert_eq!(s.a, a.adjoint());
        assert_eq!(uni_star(&s), UnitizationElement::embed(a));
    }

    #[test]
    fn norm_examples() {
        let z = c(3.0, -4.0);
        assert!((uni_norm(&UnitizationElement::new(z, ComplexMatrix::zeros(3))) - 5.0).abs() < 1e-14);
        let a = ComplexMatrix::from_real_diag(&[1.0, -3.0]);
        assert!((uni_norm(&UnitizationElement::embed(a)) - 3.0).abs() < 1e-14);
        let x = UnitizationElement::new(c(1.0, 0.0), ComplexMatrix::identity(2).scale_real(-1.0));
        assert!((uni_norm(&x) - 1.0).abs() < 1e-15);
        assert!((uni_norm_map(&x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn representation_examples() {
        assert_eq!(uni_represent(&UnitizationElement::unit(2)), ComplexMatrix::identity(4));
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let r = uni_represent(&UnitizationElement::embed(a.clone()));
        assert_eq!(r, ComplexMatrix::from_real_diag(&[0.0, 0.0, 1.0, 2.0]));
        let d = normal_spectral_decomposition(&r, &Tolerances::default()).unwrap();
        let mut re: Vec<f64> = d.lambda.iter().map(|l| l.re).collect();
        re.dedup();
        assert_eq!(re, vec![0.0, 1.0, 2.0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn c_star_identity_and_norm_routes(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = sample::random_unitization(&mut rng, n);
            let norm = uni_norm(&x);
            let xsx = uni_mul(&uni_star(&x), &x).unwrap();
            prop_assert!((uni_norm(&xsx) - norm * norm).abs() <= 1e-9 * norm * norm);
            prop_assert!((uni_norm_map(&x) - norm).abs() <= 1e-9 * norm);
        }

        #[test]
        fn representation_is_isometric_star_homomorphism(seed in any::<u64>(), n in 1usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = sample::random_unitization(&mut rng, n);
            let y = sample::random_unitization(&mut rng, n);
            let xy = uni_mul(&x, &y).unwrap();
            let scale = uni_norm(&x) * uni_norm(&y);
            prop_assert!(uni_represent(&xy).dist(&(&uni_represent(&x) * &uni_represent(&y))) <= 1e-10 * scale);
            prop_assert!(uni_represent(&uni_star(&x)).dist(&uni_represent(&x).adjoint()) <= 1e-15);
            prop_assert!((operator_norm(&uni_represent(&x)) - uni_norm(&x)).abs() <= 1e-10 * uni_norm(&x));
            prop_assert!(close(&uni_mul(&uni_mul(&x, &y).unwrap(), &x).unwrap(), &uni_mul(&x, &uni_mul(&y, &x).unwrap()).unwrap(), 1e-10 * scale * uni_norm(&x)));
        }

        #[test]
        fn embedding_is_isometric(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = sample::random_matrix(&mut rng, n);
            let b = sample::random_matrix(&mut rng, n);
            let (ea, eb) = (UnitizationElement::embed(a.clone()), UnitizationElement::embed(b.clone()));
            prop_assert!((uni_norm(&ea) - operator_norm(&a)).abs() <= 1e-12 * operator_norm(&a));
            prop_assert_eq!(uni_star(&ea), UnitizationElement::embed(a.adjoint()));
            let prod = uni_mul(&ea, &eb).unwrap();
            prop_assert!(close(&prod, &UnitizationElement::embed(&a * &b), 1e-12 * operator_norm(&a) * operator_norm(&b)));
        }
    }
}
