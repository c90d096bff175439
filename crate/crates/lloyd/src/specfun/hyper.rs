//! Generalized hypergeometric series 0F1 and 1F2 by term recurrence.

use super::{SpecFunAccuracy, SpecFunError};

/// Series arguments beyond this magnitude are rejected; the term recurrence
/// still converges but intermediate terms overflow the useful range.
pub const HYPER_MAX_ABS_Z: f64 = 400.0;

fn check_parameter(b: f64) -> Result<(), SpecFunError> {
    if b <= 0.0 && b.fract() == 0.0 {
        return Err(SpecFunError::Domain {
            value: b,
            reason: "lower hypergeometric parameter is a non-positive integer".into(),
        });
    }
    Ok(())
}

fn check_argument(z: f64) -> Result<(), SpecFunError> {
    if !z.is_finite() || z.abs() > HYPER_MAX_ABS_Z {
        return Err(SpecFunError::Domain {
            value: z,
            reason: format!("series argument outside |z| <= {HYPER_MAX_ABS_Z}"),
        });
    }
    Ok(())
}

/// Sum a hypergeometric series from its term ratio `r(k) = t_{k+1} / t_k`.
/// Stops once three consecutive terms fall below the target relative size.
fn sum_series<R>(ratio: R, acc: &SpecFunAccuracy) -> Result<f64, SpecFunError>
where
    R: Fn(usize) -> f64,
{
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small_streak = 0;
    for k in 0..acc.series_max_terms {
        term *= ratio(k);
        sum += term;
        if term.abs() < acc.target_rel_err * sum.abs().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecFunError::Convergence {
        max_terms: acc.series_max_terms,
        last_term: term.abs(),
    })
}

/// 0F1(; b; z)
pub fn hyp0f1(b: f64, z: f64) -> Result<f64, SpecFunError> {
    hyp0f1_with(b, z, &SpecFunAccuracy::default())
}

pub fn hyp0f1_with(b: f64, z: f64, acc: &SpecFunAccuracy) -> Result<f64, SpecFunError> {
    acc.validate()?;
    check_parameter(b)?;
    check_argument(z)?;
    sum_series(|k| z / ((b + k as f64) * (k as f64 + 1.0)), acc)
}

/// 1F2(a; b1, b2; z)
pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64) -> Result<f64, SpecFunError> {
    hyp1f2_with(a, b1, b2, z, &SpecFunAccuracy::default())
}

pub fn hyp1f2_with(
    a: f64,
    b1: f64,
    b2: f64,
    z: f64,
    acc: &SpecFunAccuracy,
) -> Result<f64, SpecFunError> {
    acc.validate()?;
    check_parameter(b1)?;
    check_parameter(b2)?;
    check_argument(z)?;
    sum_series(
        |k| {
            let kf = k as f64;
            z * (a + kf) / ((b1 + kf) * (b2 + kf) * (kf + 1.0))
        },
        acc,
    )
}
