//! Semi-infinite oscillatory integrals via zero-bracketing and
//! Wynn-epsilon acceleration of the alternating partial sums.

use num_complex::Complex64;

use super::{integrate_adaptive, IntegralResult, QuadratureError, QuadratureSpec};

/// Wynn's epsilon algorithm on a sequence of partial sums.
///
/// Returns the accelerated limit and a heuristic error estimate taken from
/// the spread of the last even-column entries.
fn wynn_epsilon(sums: &[Complex64]) -> (Complex64, f64) {
    let n = sums.len();
    if n < 3 {
        let last = *sums.last().unwrap();
        let err = if n == 2 {
            (sums[1] - sums[0]).norm()
        } else {
            f64::INFINITY
        };
        return (last, err);
    }

    let scale = sums
        .iter()
        .map(|s| s.norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let mut prev_col = vec![Complex64::new(0.0, 0.0); n + 1]; // epsilon_{-1}
    let mut col = sums.to_vec(); // epsilon_0
    // The best estimate is the even-column tail entry whose change from the
    // previous even column is smallest; once deltas reach roundoff the table
    // divides by noise, so settling and blowup both end the recursion.
    let mut best = *col.last().unwrap();
    let mut best_err = (sums[n - 1] - sums[n - 2]).norm();
    let mut last_even_tail = best;

    'table: for _ in 0..n - 1 {
        let len = col.len() - 1;
        let mut next = Vec::with_capacity(len);
        for i in 0..len {
            let delta = col[i + 1] - col[i];
            if delta.norm() < 1e-15 * scale {
                let err = (col[i + 1] - last_even_tail)
                    .norm()
                    .max(1e-16 * scale)
                    .min(best_err);
                return (col[i + 1], err);
            }
            next.push(prev_col[i + 1] + 1.0 / delta);
        }
        prev_col = std::mem::take(&mut col);
        col = next;
        // Even columns (those derived from two odd steps) estimate the limit.
        if col.len() % 2 == sums.len() % 2 {
            let tail = *col.last().unwrap();
            if tail.norm() > 1e3 * scale {
                break 'table; // the table has started amplifying roundoff
            }
            let err = (tail - last_even_tail).norm();
            if err < best_err {
                best_err = err;
                best = tail;
            }
            last_even_tail = tail;
        }
        if col.len() <= 1 {
            break;
        }
    }
    (best, best_err)
}

/// Integrate `f` over `[a, infinity)` where the integrand oscillates with a
/// strictly increasing `phase`.
///
/// The axis is cut at the points where `phase` crosses consecutive multiples
/// of pi; each segment is integrated with the adaptive engine, and the
/// alternating sequence of partial sums is extrapolated with Wynn's epsilon
/// algorithm. `phase` is only used to locate the cuts, so any function with
/// the right zero structure works.
pub fn integrate_oscillatory_tail<F, P>(
    f: F,
    phase: P,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult, QuadratureError>
where
    F: Fn(f64) -> Complex64,
    P: Fn(f64) -> f64,
{
    spec.validate()?;
    let n_segments = 2 * spec.tail_zero_pairs;
    let segment_spec = QuadratureSpec {
        abs_tol: spec.abs_tol * 0.1,
        rel_tol: spec.rel_tol * 0.1,
        max_subdivisions: 32,
        ..*spec
    };

    let p0 = phase(a);
    let pi = std::f64::consts::PI;
    let mut next_multiple = (p0 / pi).floor() + 1.0;

    let mut evals = 0u64;
    let mut quad_err = 0.0;
    let mut partial = Complex64::new(0.0, 0.0);
    let mut sums = Vec::with_capacity(n_segments);
    let mut seg_mags: Vec<f64> = Vec::with_capacity(n_segments);
    let mut grow_streak = 0usize;
    let mut left = a;

    for seg in 0..n_segments {
        // Bracket the next phase multiple of pi.
        let target = next_multiple * pi;
        let mut step = if seg_mags.is_empty() {
            (left.abs() * 0.1).max(0.1)
        } else {
            (left - a).max(0.1) * 0.5
        };
        let mut right = left;
        let mut grew = 0;
        while phase(right) < target {
            right += step;
            step *= 2.0;
            grew += 1;
            if grew > 200 {
                return Err(QuadratureError::PhaseBracketing { from: left });
            }
        }
        // Bisect phase(x) = target.
        let mut lo = left;
        let mut hi = right;
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if phase(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let cut = 0.5 * (lo + hi);

        let seg_result = integrate_adaptive(&f, left, cut, &segment_spec)?;
        evals += seg_result.evaluations;
        quad_err += seg_result.err_estimate;
        partial += seg_result.value;
        sums.push(partial);

        let mag = seg_result.value.norm();
        // Tail-structure check: once the alternation is established the
        // segment magnitudes must settle into decay. Four consecutive
        // growing segments (or a jump) mean the envelope is not decaying.
        if seg >= 4 && mag > spec.abs_tol {
            if mag > 1.000001 * seg_mags[seg - 1] {
                grow_streak += 1;
            } else {
                grow_streak = 0;
            }
            if grow_streak >= 4 || mag > 4.0 * seg_mags[seg - 1].max(seg_mags[seg - 2]) {
                return Err(QuadratureError::NonDecayingTail {
                    segment: seg,
                    magnitude: mag,
                });
            }
        }
        seg_mags.push(mag);

        left = cut;
        next_multiple += 1.0;

        // Early exit when the raw tail is already negligible.
        if seg >= 4 && mag < spec.abs_tol * 1e-3 {
            break;
        }
    }

    let (value, accel_err) = wynn_epsilon(&sums);
    let err_estimate = accel_err + quad_err;
    let converged = err_estimate <= spec.tolerance_for(value.norm());

    Ok(IntegralResult {
        value,
        err_estimate,
        evaluations: evals,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_integral_reaches_pi_over_two() {
        let spec = QuadratureSpec::default();
        let r = integrate_oscillatory_tail(
            |x| Complex64::new(if x == 0.0 { 1.0 } else { x.sin() / x }, 0.0),
            |x| x,
            0.0,
            &spec,
        )
        .unwrap();
        let exact = std::f64::consts::FRAC_PI_2;
        assert!(
            (r.value.re - exact).abs() < 1e-8,
            "got {} err {}",
            r.value.re,
            r.err_estimate
        );
    }

    #[test]
    fn zero_amplitude_gives_zero() {
        let spec = QuadratureSpec::default();
        let r = integrate_oscillatory_tail(
            |_| Complex64::new(0.0, 0.0),
            |x| x,
            0.0,
            &spec,
        )
        .unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn growing_tail_is_rejected() {
        let spec = QuadratureSpec::default();
        let r = integrate_oscillatory_tail(
            |x| Complex64::new(x.sin() * (0.05 * x).exp(), 0.0),
            |x| x,
            0.0,
            &spec,
        );
        assert!(matches!(r, Err(QuadratureError::NonDecayingTail { .. })));
    }

    #[test]
    fn fresnel_like_phase_is_handled() {
        // int_0^inf sin(x^2) dx = sqrt(pi/8)
        let spec = QuadratureSpec::default();
        let r = integrate_oscillatory_tail(
            |x| Complex64::new((x * x).sin(), 0.0),
            |x| x * x,
            0.0,
            &spec,
        )
        .unwrap();
        let exact = (std::f64::consts::PI / 8.0).sqrt();
        assert!((r.value.re - exact).abs() < 1e-8, "got {}", r.value.re);
    }
}
