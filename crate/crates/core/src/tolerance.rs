//! Numerical tolerance bundle shared by every operation.

/// Default relative tolerance for predicates, restriction and law checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default eigenvalue clustering radius, relative to `‖a‖`.
pub const DEFAULT_CLUSTER_REL: f64 = 1e-8;

/// Eigenvalues within `1e-12·‖a‖` of 0 are solver noise and become exactly 0.
pub const ZERO_SNAP_REL: f64 = 1e-12;

/// Tolerances used by the calculus.
///
/// `cluster_tol` is absolute when set; otherwise it is `1e-8·‖a‖` for the
/// matrix at hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub tol: f64,
    pub cluster_tol: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            cluster_tol: None,
        }
    }
}

impl Tolerances {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            cluster_tol: None,
        }
    }

    pub fn with_cluster_tol(mut self, cluster_tol: f64) -> Self {
        self.cluster_tol = Some(cluster_tol);
        self
    }

    /// Clustering radius for a matrix of operator norm `norm`.
    pub fn cluster_radius(&self, norm: f64) -> f64 {
        self.cluster_tol.unwrap_or(DEFAULT_CLUSTER_REL * norm)
    }
}

impl From<f64> for Tolerances {
    fn from(tol: f64) -> Self {
        Self::new(tol)
    }
}
