//! Adaptive Gauss-Kronrod (7-15) panel integration.

use num_complex::Complex64;

use super::{IntegralResult, QuadratureError, QuadratureSpec};

// 15-point Kronrod abscissae (positive half, last entry is the center).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// 7-point Gauss weights, paired with the odd Kronrod abscissae.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

fn gk15<F>(f: &F, a: f64, b: f64, evals: &mut u64) -> Result<Panel, QuadratureError>
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut sample = |x: f64| -> Result<Complex64, QuadratureError> {
        *evals += 1;
        let v = f(x);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(QuadratureError::NonFiniteSample { abscissa: x });
        }
        Ok(v)
    };

    let f_center = sample(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = sample(center - dx)? + sample(center + dx)?;
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }

    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).norm();
    Ok(Panel { a, b, value, err })
}

/// Integrate `f` over `[a, b]` by adaptive bisection of Gauss-Kronrod panels.
///
/// The panel with the largest error estimate is split until the summed
/// estimate meets the tolerance or the panel budget is exhausted; in the
/// latter case the result carries `converged = false` instead of failing.
/// Accumulation runs in fixed left-to-right panel order, so identical inputs
/// produce bit-identical results.
pub fn integrate_adaptive<F>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult, QuadratureError>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(a < b) {
        return Err(QuadratureError::InvalidInterval { a, b });
    }

    let mut evals = 0u64;
    let mut panels = vec![gk15(&f, a, b, &mut evals)?];

    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= spec.tolerance_for(total.norm()) {
            break;
        }
        if panels.len() >= spec.max_subdivisions {
            break;
        }
        // Worst panel first; ties resolved by index for determinism.
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(i, p), (j, q)| p.err.partial_cmp(&q.err).unwrap().then(j.cmp(i)))
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // Interval no longer splittable in f64.
            break;
        }
        let left = gk15(&f, pa, mid, &mut evals)?;
        let right = gk15(&f, mid, pb, &mut evals)?;
        panels[worst] = left;
        panels.push(right);
    }

    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap());
    let value: Complex64 = panels.iter().map(|p| p.value).sum();
    let err_estimate: f64 = panels.iter().map(|p| p.err).sum();
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

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn integrates_sine_over_half_period() {
        let r = integrate_adaptive(
            |x| Complex64::new(x.sin(), 0.0),
            0.0,
            std::f64::consts::PI,
            &spec(),
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.value.re - 2.0).abs() <= spec().abs_tol);
        assert!(r.value.im.abs() < 1e-14);
    }

    #[test]
    fn unit_constant_is_exact() {
        let r = integrate_adaptive(|_| Complex64::new(1.0, 0.0), 0.0, 1.0, &spec()).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn oscillatory_exponential_matches_closed_form() {
        // int_0^10 e^{20ix} dx = (e^{200i} - 1) / (20 i)
        let r = integrate_adaptive(
            |x| Complex64::new(0.0, 20.0 * x).exp(),
            0.0,
            10.0,
            &spec(),
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 200.0).exp() - 1.0) / Complex64::new(0.0, 20.0);
        assert!(r.converged);
        assert!((r.value - exact).norm() < 1e-9, "diff {}", (r.value - exact).norm());
    }

    #[test]
    fn non_finite_integrand_is_reported_with_abscissa() {
        let r = integrate_adaptive(
            |x| Complex64::new(1.0 / (x - 0.5), 0.0),
            0.0,
            1.0,
            &spec(),
        );
        // 0.5 is the panel center of the very first rule application.
        match r {
            Err(QuadratureError::NonFiniteSample { abscissa }) => {
                assert!((abscissa - 0.5).abs() < 1e-12)
            }
            other => panic!("expected NonFiniteSample, got {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_reports_not_converged() {
        let tight = QuadratureSpec {
            abs_tol: 1e-300,
            rel_tol: 1e-300,
            max_subdivisions: 8,
            ..spec()
        };
        let r = integrate_adaptive(
            |x| Complex64::new((50.0 * x).sin() / (1e-3 + x * x), 0.0),
            0.0,
            10.0,
            &tight,
        )
        .unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn determinism_bit_identical() {
        let run = || {
            integrate_adaptive(
                |x| Complex64::new((13.0 * x).cos() * x.exp(), (7.0 * x).sin()),
                -1.0,
                2.5,
                &spec(),
            )
            .unwrap()
        };
        let (r1, r2) = (run(), run());
        assert_eq!(r1.value.re.to_bits(), r2.value.re.to_bits());
        assert_eq!(r1.value.im.to_bits(), r2.value.im.to_bits());
        assert_eq!(r1.err_estimate.to_bits(), r2.err_estimate.to_bits());
        assert_eq!(r1.evaluations, r2.evaluations);
    }
}
