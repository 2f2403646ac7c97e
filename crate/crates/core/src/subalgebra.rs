//! Star-subalgebras of `M_n(ℂ)` carried as Frobenius-orthonormal bases.

use crate::error::{Error, Result};
use crate::matrix::{is_star_normal, ComplexMatrix, EPS_FLOOR};

/// A star-closed, multiplication-closed subspace of `M_n(ℂ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSubalgebra {
    ambient_dim: usize,
    basis: Vec<ComplexMatrix>,
    unital: bool,
}

/// Projection residual of a membership query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Containment {
    pub contained: bool,
    /// `‖x − P x‖_F / ‖x‖_F`.
    pub residual: f64,
}

impl StarSubalgebra {
    /// The smallest star-subalgebra containing `generators` (and `I` when
    /// `unital`), closed under products and adjoints.
    pub fn generated_by(generators: &[ComplexMatrix], n: usize, unital: bool, tol: f64) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.n(),
            });
        }
        let mut alg = Self {
            ambient_dim: n,
            basis: Vec::new(),
            unital,
        };
        if unital {
            alg.try_extend(ComplexMatrix::identity(n), tol);
        }
        for g in generators {
            alg.try_extend(g.clone(), tol);
            alg.try_extend(g.adjoint(), tol);
        }
        let cap = n * n;
        let mut k = 0;
        while k < alg.basis.len() && alg.basis.len() <= cap {
            let e = alg.basis[k].clone();
            alg.try_extend(e.adjoint(), tol);
            for j in 0..=k {
                let b = alg.basis[j].clone();
                alg.try_extend(&e * &b, tol);
                alg.try_extend(&b * &e, tol);
            }
            k += 1;
        }
        Ok(alg)
    }

    /// All of `M_n(ℂ)`, spanned by the matrix units.
    pub fn full(n: usize) -> Self {
        let mut basis = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                basis.push(ComplexMatrix::unit(n, i, j));
            }
        }
        Self {
            ambient_dim: n,
            basis,
            unital: true,
        }
    }

    /// Modified Gram–Schmidt step (applied twice); keeps `v` only if its
    /// residual exceeds `tol·‖v‖_F`.
    fn try_extend(&mut self, v: ComplexMatrix, tol: f64) -> bool {
        let norm = v.frobenius_norm();
        if norm == 0.0 || !norm.is_finite() {
            return false;
        }
        let mut r = v.scale_real(1.0 / norm);
        for _ in 0..2 {
            for b in &self.basis {
                let c = b.frobenius_inner(&r);
                r = &r - &b.scale(c);
            }
        }
        let rn = r.frobenius_norm();
        if rn > tol {
            self.basis.push(r.scale_real(1.0 / rn));
            true
        } else {
            false
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Orthogonal projection onto the span, plus basis coordinates.
    pub fn project(&self, x: &ComplexMatrix) -> (ComplexMatrix, Vec<num_complex::Complex64>) {
        let mut p = ComplexMatrix::zeros(self.ambient_dim);
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let c = b.frobenius_inner(x);
            p += &b.scale(c);
            coords.push(c);
        }
        (p, coords)
    }

    fn relative_projection_residual(&self, x: &ComplexMatrix) -> f64 {
        let (p, _) = self.project(x);
        (x - &p).frobenius_norm() / x.frobenius_norm().max(EPS_FLOOR)
    }

    /// Largest relative residual of `b*` and `b·c` over the basis.
    pub fn closure_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for b in &self.basis {
            worst = worst.max(self.relative_projection_residual(&b.adjoint()));
            for c in &self.basis {
                worst = worst.max(self.relative_projection_residual(&(b * c)));
            }
        }
        worst
    }
}

/// Star-subalgebra generated by a single normal element.
pub fn elemental_subalgebra(a: &ComplexMatrix, unital: bool, tol: f64) -> Result<StarSubalgebra> {
    let report = is_star_normal(a, tol);
    if !report.holds {
        return Err(Error::NotNormal {
            residual: report.residual,
        });
    }
    StarSubalgebra::generated_by(std::slice::from_ref(a), a.n(), unital, tol)
}

pub fn subalgebra_contains(b: &StarSubalgebra, x: &ComplexMatrix, tol: f64) -> Result<Containment> {
    if x.n() != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: b.ambient_dim,
            found: x.n(),
        });
    }
    let residual = b.relative_projection_residual(x);
    Ok(Containment {
        contained: residual <= tol,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    #[test]
    fn elemental_examples() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        assert_eq!(elemental_subalgebra(&a, true, TOL).unwrap().dim(), 2);

        let e11 = ComplexMatrix::unit(2, 0, 0);
        let b = elemental_subalgebra(&e11, false, TOL).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.basis()[0].dist(&e11) < 1e-15);

        let scalar = ComplexMatrix::identity(3).scale(Complex64::new(2.0, -1.0));
        assert_eq!(elemental_subalgebra(&scalar, true, TOL).unwrap().dim(), 1);
    }

    #[test]
    fn non_normal_generator_is_rejected() {
        let nil = ComplexMatrix::unit(2, 0, 1);
        assert!(matches!(elemental_subalgebra(&nil, false, TOL), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn membership_examples() {
        let e11 = ComplexMatrix::unit(2, 0, 0);
        let b = elemental_subalgebra(&e11, false, TOL).unwrap();
        assert!(subalgebra_contains(&b, &e11, TOL).unwrap().contained);
        let c = subalgebra_contains(&b, &ComplexMatrix::identity(2), TOL).unwrap();
        assert!(!c.contained);
        assert!((c.residual - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            subalgebra_contains(&b, &ComplexMatrix::identity(3), TOL),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn powers_lie_in_the_generated_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = sample::random_normal(&mut rng, 5, 1.0);
        let b = elemental_subalgebra(&a, false, TOL).unwrap();
        assert!(subalgebra_contains(&b, &a.powi(3), TOL).unwrap().contained);
        assert!(subalgebra_contains(&b, &(&a * &a.adjoint()), TOL).unwrap().contained);
        assert!(!subalgebra_contains(&b, &sample::random_matrix(&mut rng, 5), TOL).unwrap().contained);
    }

    #[test]
    fn dimension_counts_distinct_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let u = sample::random_unitary(&mut rng, 5);
        let c = |x: f64, y: f64| Complex64::new(x, y);
        let with_zero = u.conjugate_diag(&[c(0.0, 0.0), c(1.0, 1.0), c(1.0, 1.0), c(-2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(elemental_subalgebra(&with_zero, true, TOL).unwrap().dim(), 3);
        assert_eq!(elemental_subalgebra(&with_zero, false, TOL).unwrap().dim(), 2);
        let without_zero = u.conjugate_diag(&[c(3.0, 0.0), c(1.0, 1.0), c(1.0, 1.0), c(-2.0, 0.0), c(0.5, 0.0)]);
        assert_eq!(elemental_subalgebra(&without_zero, false, TOL).unwrap().dim(), 4);
    }

    #[test]
    fn corner_generates_matrix_block() {
        let gens = [ComplexMatrix::unit(3, 0, 1)];
        let b = StarSubalgebra::generated_by(&gens, 3, false, TOL).unwrap();
        assert_eq!(b.dim(), 4);
        assert!(b.closure_residual() < 1e-12);
        let full = StarSubalgebra::full(3);
        assert_eq!(full.dim(), 9);
        assert!(full.closure_residual() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn closure_invariants_hold(seed in any::<u64>(), n in 1usize..=6, unital in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = sample::random_normal(&mut rng, n, 1.0);
            let b = elemental_subalgebra(&a, unital, TOL).unwrap();
            prop_assert!(b.closure_residual() <= 10.0 * TOL);
            prop_assert!(subalgebra_contains(&b, &a, TOL).unwrap().contained);
            prop_assert_eq!(b.dim(), n);
        }
    }
}
