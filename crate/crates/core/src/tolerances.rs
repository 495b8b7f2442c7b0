use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// scalar bisection / Newton
    pub root: f64,
    /// max-norm residual of the end-state system
    pub newton: f64,
    /// Legendre duality identity
    pub dual: f64,
    /// first-integral level set
    pub first_integral: f64,
    /// points of the dense scan grid used for sign detection and validation
    pub grid: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: 1e-12,
            newton: 1e-11,
            dual: 1e-10,
            first_integral: 1e-10,
            grid: 1001,
        }
    }
}
