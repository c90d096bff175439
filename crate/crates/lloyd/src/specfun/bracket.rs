//! The "corner bracket": the lambda Ai + (pi/3) Bi + hypergeometric
//! combination that multiplies each transverse mode of the gravitational
//! screen wave function, with a stable switch-over to the defining
//! Theta-integral where the closed form cancels badly.

use num_complex::Complex64;

use crate::quadrature::{
    integrate_adaptive, integrate_oscillatory_tail, QuadratureSpec,
};

use super::{airy_ai, airy_bi, ComplexAmplitude, SpecFunError};

/// Above this sigma the closed form subtracts exponentially large pieces and
/// the bracket is evaluated through the Theta-integral instead.
pub const BRACKET_SIGMA_SWITCH: f64 = 4.0;

/// Declared stable range of the bracket evaluation.
const SIGMA_MIN: f64 = -200.0;
const SIGMA_MAX: f64 = 100.0;

/// Split point below which the conditionally convergent Bi tail is handed to
/// the accelerated oscillatory integrator.
const BI_TAIL_SPLIT: f64 = -8.0;

fn check_sigma(sigma: f64) -> Result<(), SpecFunError> {
    if !sigma.is_finite() || sigma < SIGMA_MIN || sigma > SIGMA_MAX {
        return Err(SpecFunError::Domain {
            value: sigma,
            reason: format!("sigma outside the stable range [{SIGMA_MIN}, {SIGMA_MAX}]"),
        });
    }
    Ok(())
}

/// Integral of Bi over (-inf, sigma].
///
/// The lower tail oscillates with slowly decaying amplitude; it is cut at
/// the split point and accelerated, the remainder is regular quadrature.
fn bi_integral_to(sigma: f64, spec: &QuadratureSpec) -> Result<f64, SpecFunError> {
    let split = BI_TAIL_SPLIT.min(sigma);
    // substitute s = -t: integral_{-split}^{inf} Bi(-t) dt with phase
    // zeta(t) + pi/4, zeta = (2/3) t^{3/2}
    let tail = integrate_oscillatory_tail(
        |t| Complex64::new(airy_bi(-t).unwrap_or(f64::NAN), 0.0),
        |t| 2.0 / 3.0 * t.powf(1.5) + std::f64::consts::FRAC_PI_4,
        -split,
        spec,
    )?;
    let mut total = tail.value.re;
    // The body grows like exp((2/3) s^{3/2}); integrating it in unit-width
    // segments keeps every adaptive call at its own scale, so the relative
    // tolerance applies segment by segment instead of being swamped by the
    // top of the range.
    let mut left = split;
    while left < sigma {
        let right = (left + 1.0).min(sigma);
        let body = integrate_adaptive(
            |s| Complex64::new(airy_bi(s).unwrap_or(f64::NAN), 0.0),
            left,
            right,
            spec,
        )?;
        total += body.value.re;
        left = right;
    }
    Ok(total)
}

/// Integral of Ai over [sigma, inf), truncated where Ai is negligible.
///
/// Unit-width segments for the same reason as the Bi body: the decay spans
/// many decades, and each segment must meet the relative tolerance at its
/// own scale rather than vanish under the absolute one.
fn ai_integral_from(sigma: f64, spec: &QuadratureSpec) -> Result<f64, SpecFunError> {
    let upper = sigma.max(0.0) + 14.0;
    let mut total = 0.0;
    let mut left = sigma;
    while left < upper {
        let right = (left + 1.0).min(upper);
        let body = integrate_adaptive(
            |s| Complex64::new(airy_ai(s).unwrap_or(f64::NAN), 0.0),
            left,
            right,
            spec,
        )?;
        total += body.value.re;
        if total != 0.0 && body.value.re.abs() < 1e-16 * total.abs() {
            break;
        }
        left = right;
    }
    Ok(total)
}

/// Direct numerical evaluation of the Theta-weighted Airy integral
/// Ai(sigma) int_{-inf}^{sigma} Bi + Bi(sigma) int_{sigma}^{inf} Ai.
pub fn theta_integral(sigma: f64, spec: &QuadratureSpec) -> Result<f64, SpecFunError> {
    check_sigma(sigma)?;
    let ib = bi_integral_to(sigma, spec)?;
    let ia = ai_integral_from(sigma, spec)?;
    Ok(airy_ai(sigma)? * ib + airy_bi(sigma)? * ia)
}

/// Lambda-independent bracket core pi * Theta(sigma) at `n` uniform nodes
/// spanning [lo, hi], computed incrementally: one accelerated Bi lower tail
/// at `lo`, one Ai upper tail at `hi`, and short adaptive segments between
/// neighbouring nodes. All increments are added with matching sign, so the
/// exponentially growing Bi integral and the decaying Ai integral both stay
/// cancellation-free.
pub fn theta_core_table(
    lo: f64,
    hi: f64,
    n: usize,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>, SpecFunError> {
    check_sigma(lo)?;
    check_sigma(hi)?;
    if !(hi > lo) || n < 2 {
        return Err(SpecFunError::Domain {
            value: hi - lo,
            reason: "table needs hi > lo and at least two nodes".into(),
        });
    }
    let h = (hi - lo) / (n - 1) as f64;
    let node = |i: usize| lo + h * i as f64;

    let segment = |a: f64, b: f64, f: &dyn Fn(f64) -> f64| -> Result<f64, SpecFunError> {
        let r = integrate_adaptive(
            |s| Complex64::new(f(s), 0.0),
            a,
            b,
            spec,
        )?;
        Ok(r.value.re)
    };

    let mut ib = vec![0.0; n];
    ib[0] = bi_integral_to(lo, spec)?;
    for i in 1..n {
        ib[i] = ib[i - 1] + segment(node(i - 1), node(i), &|s| airy_bi(s).unwrap_or(f64::NAN))?;
    }
    let mut ia = vec![0.0; n];
    ia[n - 1] = ai_integral_from(hi, spec)?;
    for i in (0..n - 1).rev() {
        ia[i] = ia[i + 1] + segment(node(i), node(i + 1), &|s| airy_ai(s).unwrap_or(f64::NAN))?;
    }

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let s = node(i);
        out.push(std::f64::consts::PI * (airy_ai(s)? * ib[i] + airy_bi(s)? * ia[i]));
    }
    Ok(out)
}

/// Closed-form lambda-independent part of the bracket:
/// (pi/3) Bi(sigma) + (sigma^2/2) [0F1 1F2 combination].
fn bracket_closed_form(sigma: f64) -> Result<f64, SpecFunError> {
    let w = sigma * sigma * sigma / 9.0;
    let combo = super::hyp0f1(2.0 / 3.0, w)? * super::hyp1f2(2.0 / 3.0, 4.0 / 3.0, 5.0 / 3.0, w)?
        - 2.0 * super::hyp0f1(4.0 / 3.0, w)? * super::hyp1f2(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, w)?;
    Ok(std::f64::consts::FRAC_PI_3 * airy_bi(sigma)? + 0.5 * sigma * sigma * combo)
}

/// Bracket evaluation: lambda Ai(sigma) plus the lambda-independent part,
/// by the closed form below the switch and by the Theta-integral above it.
pub fn airy_corner_bracket(
    sigma: f64,
    lambda: ComplexAmplitude,
) -> Result<ComplexAmplitude, SpecFunError> {
    airy_corner_bracket_with(sigma, lambda, &QuadratureSpec::default())
}

pub fn airy_corner_bracket_with(
    sigma: f64,
    lambda: ComplexAmplitude,
    spec: &QuadratureSpec,
) -> Result<ComplexAmplitude, SpecFunError> {
    check_sigma(sigma)?;
    let core = if sigma <= BRACKET_SIGMA_SWITCH {
        bracket_closed_form(sigma)?
    } else {
        std::f64::consts::PI * theta_integral(sigma, spec)?
    };
    if !core.is_finite() {
        return Err(SpecFunError::Accuracy { estimate: f64::INFINITY });
    }
    Ok(lambda * airy_ai(sigma)? + core)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn sigma_zero_reduces_to_bi_term() {
        // sigma^2 factor annihilates the hypergeometric part;
        // (pi/3) Bi(0) from the 30-digit oracle.
        let b = airy_corner_bracket(0.0, ZERO).unwrap();
        assert!((b.re - 0.64394965842703454).abs() < 1e-12);
        assert_eq!(b.im, 0.0);
    }

    #[test]
    fn closed_form_matches_independent_oracle() {
        // (sigma, Theta-integral value) from a 30-digit oracle;
        // bracket(sigma, 0) = pi * Theta(sigma).
        let cases = [
            (-4.0, 0.31466934902729558),
            (-2.0, -0.55325158419788969),
            (-1.0, -0.11667221729601528),
            (0.0, 0.20497554248200025),
            (1.0, 0.23521843981043794),
            (2.0, 0.16895356565401036),
            (3.0, 0.11422886892313992),
        ];
        for (sigma, theta) in cases {
            let b = airy_corner_bracket(sigma, ZERO).unwrap();
            let want = std::f64::consts::PI * theta;
            assert!(
                (b.re - want).abs() < 1e-9 * want.abs(),
                "sigma = {sigma}: {} vs {want}",
                b.re
            );
        }
    }

    #[test]
    fn theta_path_matches_oracle_above_switch() {
        let spec = QuadratureSpec::default();
        for (sigma, theta) in [
            (5.0, 0.064919784093853112),
            (8.0, 0.039951133719508908),
            (12.25, 0.081722465618123638 / std::f64::consts::PI),
            (16.0, 0.062530668684326539 / std::f64::consts::PI),
        ] {
            let got = theta_integral(sigma, &spec).unwrap();
            assert!(
                (got - theta).abs() < 1e-8 * theta.abs(),
                "sigma = {sigma}: {got} vs {theta}"
            );
        }
    }

    #[test]
    fn linear_in_lambda() {
        let lambda = Complex64::new(1.5, -0.25);
        for &sigma in &[-3.0, 0.7, 2.0] {
            let with = airy_corner_bracket(sigma, lambda).unwrap();
            let without = airy_corner_bracket(sigma, ZERO).unwrap();
            let diff = with - without;
            let expect = lambda * airy_ai(sigma).unwrap();
            assert!((diff - expect).norm() < 1e-14 * expect.norm().max(1.0));
        }
    }

    #[test]
    fn evaluation_paths_agree_on_overlap_window() {
        // Declared overlap window [3, 5]: closed form vs Theta-integral.
        let spec = QuadratureSpec::default();
        let mut sigma = 3.0;
        while sigma <= 5.0 {
            let closed = bracket_closed_form(sigma).unwrap();
            let theta = std::f64::consts::PI * theta_integral(sigma, &spec).unwrap();
            assert!(
                (closed - theta).abs() <= 1e-6 * theta.abs(),
                "sigma = {sigma}: {closed} vs {theta}"
            );
            sigma += 0.25;
        }
    }

    #[test]
    fn incremental_table_matches_pointwise_evaluation() {
        let spec = QuadratureSpec::default();
        let (lo, hi, n) = (4.0, 16.0, 49);
        let table = theta_core_table(lo, hi, n, &spec).unwrap();
        let h = (hi - lo) / (n - 1) as f64;
        for &i in &[0usize, 7, 20, 33, 48] {
            let sigma = lo + h * i as f64;
            let direct = std::f64::consts::PI * theta_integral(sigma, &spec).unwrap();
            assert!(
                (table[i] - direct).abs() < 5e-7 * direct.abs(),
                "sigma = {sigma}: {} vs {direct}",
                table[i]
            );
        }
    }

    #[test]
    fn out_of_range_sigma_rejected() {
        assert!(matches!(
            airy_corner_bracket(150.0, ZERO),
            Err(SpecFunError::Domain { .. })
        ));
    }
}
