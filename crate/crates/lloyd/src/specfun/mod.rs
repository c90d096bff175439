//! Special functions backing the interferometer formulas: Hankel functions
//! of the first kind (orders 0 and 1), Airy functions and derivatives, the
//! generalized hypergeometric series 0F1 and 1F2, and the stable "corner
//! bracket" combination entering the gravitational wave function.
//!
//! Everything here is a deterministic pure function of its arguments and the
//! accuracy configuration; there is no global state.

mod airy;
mod bracket;
mod hankel;
mod hyper;

pub use airy::{airy_ai, airy_ai_prime, airy_bi, airy_bi_prime, BI_OVERFLOW_BOUND};
pub use bracket::{
    airy_corner_bracket, airy_corner_bracket_with, theta_core_table, theta_integral,
    BRACKET_SIGMA_SWITCH,
};
pub use hankel::hankel1;
pub use hyper::{hyp0f1, hyp1f2, HYPER_MAX_ABS_Z};

use thiserror::Error;

/// Complex scalar wave amplitude or Green's-function value.
pub type ComplexAmplitude = num_complex::Complex64;

/// Accuracy configuration shared by the special-function evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunAccuracy {
    pub target_rel_err: f64,
    pub series_max_terms: usize,
    /// Argument magnitude beyond which Hankel evaluation switches to the
    /// asymptotic expansion.
    pub asymptotic_switch: f64,
}

impl Default for SpecFunAccuracy {
    fn default() -> Self {
        SpecFunAccuracy {
            target_rel_err: 1e-12,
            series_max_terms: 400,
            asymptotic_switch: 12.0,
        }
    }
}

impl SpecFunAccuracy {
    pub fn validate(&self) -> Result<(), SpecFunError> {
        if !(self.target_rel_err > 0.0 && self.target_rel_err < 1e-3) {
            return Err(SpecFunError::InvalidAccuracy(
                "target_rel_err must lie in (0, 1e-3)".into(),
            ));
        }
        if !(self.asymptotic_switch > 0.0) {
            return Err(SpecFunError::InvalidAccuracy(
                "asymptotic_switch must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("invalid accuracy configuration: {0}")]
    InvalidAccuracy(String),
    #[error("argument {value} outside the domain: {reason}")]
    Domain { value: f64, reason: String },
    #[error("argument {value} beyond the overflow bound {bound}")]
    Range { value: f64, bound: f64 },
    #[error("series failed to converge within {max_terms} terms (last term {last_term:.3e})")]
    Convergence { max_terms: usize, last_term: f64 },
    #[error("cancellation too severe: estimated relative error {estimate:.3e}")]
    Accuracy { estimate: f64 },
    #[error(transparent)]
    Quadrature(#[from] crate::quadrature::QuadratureError),
}
