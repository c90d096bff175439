//! Deterministic numerical integration engines.
//!
//! Three integrators cover every integral in the library: adaptive
//! Gauss-Kronrod quadrature on finite intervals, semi-infinite oscillatory
//! integrals with Wynn-epsilon tail acceleration, and a tensorized 2D
//! integrator over a truncated transverse wave-vector square.

mod adaptive;
mod kperp;
mod oscillatory;

pub use adaptive::integrate_adaptive;
pub use kperp::integrate_kperp_2d;
pub use oscillatory::integrate_oscillatory_tail;

use num_complex::Complex64;
use thiserror::Error;

/// Tolerances and budgets shared by all integrators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of panels an adaptive integration may create.
    pub max_subdivisions: usize,
    /// Oscillation half-periods summed before sequence acceleration kicks in.
    pub tail_zero_pairs: usize,
    /// Cutoff policy parameter for the transverse truncation: the Ai value
    /// below which a transverse mode is certified negligible.
    pub kperp_truncation: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 400,
            tail_zero_pairs: 40,
            kperp_truncation: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(QuadratureError::InvalidSpec(
                "abs_tol and rel_tol must be positive".into(),
            ));
        }
        if self.max_subdivisions < 8 {
            return Err(QuadratureError::InvalidSpec(
                "max_subdivisions must be at least 8".into(),
            ));
        }
        if self.tail_zero_pairs == 0 {
            return Err(QuadratureError::InvalidSpec(
                "tail_zero_pairs must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Tolerance actually in force for a value of magnitude `scale`.
    pub fn tolerance_for(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale)
    }
}

/// Outcome of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("integrand returned a non-finite value at x = {abscissa}")]
    NonFiniteSample { abscissa: f64 },
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("oscillatory tail is not decaying beyond segment {segment} (|S| = {magnitude:.3e})")]
    NonDecayingTail { segment: usize, magnitude: f64 },
    #[error("could not bracket the next phase zero past x = {from}")]
    PhaseBracketing { from: f64 },
}
