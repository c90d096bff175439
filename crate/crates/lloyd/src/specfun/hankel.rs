//! Hankel functions of the first kind, orders 0 and 1, for positive real
//! argument: ascending series below the switch point, Hankel asymptotic
//! expansion above it.

use num_complex::Complex64;

use super::{ComplexAmplitude, SpecFunAccuracy, SpecFunError};

const EULER_GAMMA: f64 = 0.57721566490153286;

/// J0 and Y0 from the ascending series.
fn series_0(x: f64, acc: &SpecFunAccuracy) -> Result<(f64, f64), SpecFunError> {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut j = 1.0;
    let mut ysum = 0.0; // sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
    let mut harmonic = 0.0;
    for k in 1..=acc.series_max_terms {
        term *= -q / ((k * k) as f64);
        harmonic += 1.0 / k as f64;
        j += term;
        ysum -= term * harmonic;
        if term.abs() < acc.target_rel_err * 1e-2 {
            let y = std::f64::consts::FRAC_2_PI * (((0.5 * x).ln() + EULER_GAMMA) * j + ysum);
            return Ok((j, y));
        }
    }
    Err(SpecFunError::Convergence {
        max_terms: acc.series_max_terms,
        last_term: term.abs(),
    })
}

/// J1 and Y1 from the ascending series.
fn series_1(x: f64, acc: &SpecFunAccuracy) -> Result<(f64, f64), SpecFunError> {
    let q = 0.25 * x * x;
    // J1 = (x/2) sum (-1)^k q^k / (k! (k+1)!)
    // Y1 = (2/pi) ln(x/2) J1 - 2/(pi x)
    //      - (x / 2 pi) sum (-1)^k (H_k + H_{k+1} - 2 gamma) q^k / (k! (k+1)!)
    let mut term = 1.0; // q^k / (k! (k+1)!)
    let mut jsum = 1.0;
    let mut hsum = 1.0 - 2.0 * EULER_GAMMA; // k = 0: H_0 + H_1 - 2 gamma
    let mut h_k = 0.0;
    for k in 1..=acc.series_max_terms {
        term *= -q / ((k * (k + 1)) as f64);
        h_k += 1.0 / k as f64;
        let h_k1 = h_k + 1.0 / (k + 1) as f64;
        jsum += term;
        hsum += term * (h_k + h_k1 - 2.0 * EULER_GAMMA);
        if term.abs() < acc.target_rel_err * 1e-2 {
            let j = 0.5 * x * jsum;
            let y = std::f64::consts::FRAC_2_PI * (0.5 * x).ln() * j
                - std::f64::consts::FRAC_2_PI / x
                - x / (2.0 * std::f64::consts::PI) * hsum;
            return Ok((j, y));
        }
    }
    Err(SpecFunError::Convergence {
        max_terms: acc.series_max_terms,
        last_term: term.abs(),
    })
}

/// Hankel asymptotic expansion: J_n and Y_n via the P/Q modulus-phase series.
fn asymptotic(order: u32, x: f64) -> (f64, f64) {
    let mu = (4 * order * order) as f64;
    // a_{k+1} = a_k (mu - (2k+1)^2) / (8 (k+1))
    let mut a = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut prev_mag = f64::INFINITY;
    for k in 0..30u32 {
        let next = a * (mu - ((2 * k + 1) * (2 * k + 1)) as f64) / (8.0 * (k + 1) as f64);
        let scaled = next / x.powi(k as i32 + 1);
        if scaled.abs() >= prev_mag {
            break; // past the optimal truncation point
        }
        prev_mag = scaled.abs();
        // term a_m / x^m with m = k + 1 carries sign (-1)^floor(m/2)
        let m = k + 1;
        let sign = if ((m / 2) % 2) == 0 { 1.0 } else { -1.0 };
        if m % 2 == 1 {
            q += sign * scaled;
        } else {
            p += sign * scaled;
        }
        a = next;
        if scaled.abs() < 1e-18 {
            break;
        }
    }
    let omega = x - (2 * order + 1) as f64 * std::f64::consts::FRAC_PI_4;
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let j = amp * (p * omega.cos() - q * omega.sin());
    let y = amp * (p * omega.sin() + q * omega.cos());
    (j, y)
}

/// H_order^(1)(x) = J_order(x) + i Y_order(x) for x > 0, order in {0, 1, 2}.
///
/// Order 2 exists only as the recurrence helper used by the derivative
/// identity tests.
pub fn hankel1(order: u32, x: f64) -> Result<ComplexAmplitude, SpecFunError> {
    hankel1_with(order, x, &SpecFunAccuracy::default())
}

pub fn hankel1_with(
    order: u32,
    x: f64,
    acc: &SpecFunAccuracy,
) -> Result<ComplexAmplitude, SpecFunError> {
    acc.validate()?;
    if !(x > 0.0) {
        return Err(SpecFunError::Domain {
            value: x,
            reason: "Hankel argument must be positive (z = 0 screen plane?)".into(),
        });
    }
    match order {
        0 | 1 => {
            let (j, y) = if x <= acc.asymptotic_switch {
                if order == 0 {
                    series_0(x, acc)?
                } else {
                    series_1(x, acc)?
                }
            } else {
                asymptotic(order, x)
            };
            Ok(Complex64::new(j, y))
        }
        2 => {
            // H_2 = (2/x) H_1 - H_0
            let h0 = hankel1_with(0, x, acc)?;
            let h1 = hankel1_with(1, x, acc)?;
            Ok(2.0 / x * h1 - h0)
        }
        _ => Err(SpecFunError::Domain {
            value: order as f64,
            reason: "only orders 0, 1 (and the order-2 recurrence helper) are supported".into(),
        }),
    }
}
