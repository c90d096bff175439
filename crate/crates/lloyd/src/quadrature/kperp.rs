//! Tensorized 2D integration over a truncated transverse wave-vector square.

use num_complex::Complex64;
use std::cell::RefCell;

use super::{integrate_adaptive, IntegralResult, QuadratureError, QuadratureSpec};

/// Integrate `f(k_y, k_z)` over `[-k_max, k_max]^2` including the
/// `1/(2 pi)^2` Fourier measure.
///
/// The inner (k_z) integral runs at a tightened tolerance; the symmetric
/// domain and symmetric panel rule make odd integrands cancel to within the
/// error estimate.
pub fn integrate_kperp_2d<F>(
    f: F,
    k_max: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult, QuadratureError>
where
    F: Fn(f64, f64) -> Complex64,
{
    spec.validate()?;
    if !(k_max > 0.0) {
        return Err(QuadratureError::InvalidInterval { a: -k_max, b: k_max });
    }

    let inner_spec = QuadratureSpec {
        abs_tol: spec.abs_tol * 0.1,
        rel_tol: spec.rel_tol * 0.1,
        ..*spec
    };

    let inner_evals = RefCell::new(0u64);
    let inner_err_sum = RefCell::new(0.0f64);
    let inner_calls = RefCell::new(0u64);
    let inner_all_converged = RefCell::new(true);
    let inner_failure = RefCell::new(None::<QuadratureError>);

    let outer = integrate_adaptive(
        |k_y| {
            if inner_failure.borrow().is_some() {
                return Complex64::new(0.0, 0.0);
            }
            match integrate_adaptive(|k_z| f(k_y, k_z), -k_max, k_max, &inner_spec) {
                Ok(r) => {
                    *inner_evals.borrow_mut() += r.evaluations;
                    *inner_err_sum.borrow_mut() += r.err_estimate;
                    *inner_calls.borrow_mut() += 1;
                    if !r.converged {
                        *inner_all_converged.borrow_mut() = false;
                    }
                    r.value
                }
                Err(e) => {
                    *inner_failure.borrow_mut() = Some(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        -k_max,
        k_max,
        spec,
    )?;

    if let Some(e) = inner_failure.into_inner() {
        return Err(e);
    }

    let calls = inner_calls.into_inner().max(1);
    // Mean inner error density times the outer extent.
    let inner_err = inner_err_sum.into_inner() / calls as f64 * (2.0 * k_max);
    let measure = 1.0 / (4.0 * std::f64::consts::PI * std::f64::consts::PI);

    let value = outer.value * measure;
    let err_estimate = (outer.err_estimate + inner_err) * measure;
    let converged = inner_all_converged.into_inner()
        && err_estimate <= spec.tolerance_for(value.norm());

    Ok(IntegralResult {
        value,
        err_estimate,
        evaluations: outer.evaluations + inner_evals.into_inner(),
        converged,
    })
}
