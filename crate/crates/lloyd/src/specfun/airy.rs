//! Airy functions Ai, Bi and their derivatives on the real line.
//!
//! Strategy: asymptotic expansions for |x| >= 9 (both signs), Taylor-series
//! stepping of the Airy ODE f'' = x f in the middle range. Stepping always
//! runs in the direction in which the wanted solution grows (Ai downward
//! from the positive anchor, Bi upward from zero, both downward on the
//! negative axis), so the recurrence stays stable.

use super::SpecFunError;

/// Bi(x) exceeds the double-precision range slightly above this argument.
pub const BI_OVERFLOW_BOUND: f64 = 103.0;

const AI_ZERO: f64 = 0.35502805388781724; // Ai(0) = 3^{-2/3} / Gamma(2/3)
const AIP_ZERO: f64 = -0.25881940379280680; // Ai'(0) = -3^{-1/3} / Gamma(1/3)
const BI_ZERO: f64 = 0.61492662744600074; // Bi(0) = 3^{-1/6} / Gamma(2/3)
const BIP_ZERO: f64 = 0.44828835735382636; // Bi'(0) = 3^{1/6} / Gamma(1/3)

const ASYMPTOTIC_CUT: f64 = 9.0;
const SQRT_PI: f64 = 1.7724538509055160;

/// One Taylor step of the Airy ODE: given (f, f') at `a`, returns (f, f')
/// at `a + h` using the recurrence (k+2)(k+1) c_{k+2} = a c_k + c_{k-1}.
fn taylor_step(a: f64, f: f64, fp: f64, h: f64) -> (f64, f64) {
    let mut c_prev = 0.0; // c_{k-1}
    let mut c0 = f;
    let mut c1 = fp;
    let mut sum = c0 + c1 * h;
    let mut dsum = c1;
    let mut hk = 1.0; // h^k
    // Every third coefficient vanishes at a = 0, so a single small term is
    // not evidence of convergence; require three in a row.
    let mut small_streak = 0;
    for k in 0u32..80 {
        let c2 = (a * c0 + c_prev) / (((k + 2) * (k + 1)) as f64);
        let term = c2 * hk * h * h;
        sum += term;
        dsum += (k + 2) as f64 * c2 * hk * h;
        c_prev = c0;
        c0 = c1;
        c1 = c2;
        hk *= h;
        if term.abs() < 1e-18 * sum.abs().max(1e-290) {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    (sum, dsum)
}

/// Propagate a solution pair from `from` to `to` in bounded steps.
fn propagate(from: f64, to: f64, mut f: f64, mut fp: f64) -> (f64, f64) {
    let mut a = from;
    let step = 0.4_f64.copysign(to - from);
    while (to - a).abs() > 1e-300 {
        let h = if (to - a).abs() > step.abs() {
            step
        } else {
            to - a
        };
        let (nf, nfp) = taylor_step(a, f, fp, h);
        f = nf;
        fp = nfp;
        a += h;
        if h != step {
            break;
        }
    }
    (f, fp)
}

/// Asymptotic u_k / v_k coefficient pair streams.
struct AsymptoticSums {
    /// sum (-1)^k u_k zeta^-k  and the same with alternating signs dropped
    u_alt: f64,
    u_pos: f64,
    v_alt: f64,
    v_pos: f64,
    /// even/odd splits used on the oscillatory side
    u_even: f64,
    u_odd: f64,
    v_even: f64,
    v_odd: f64,
}

fn asymptotic_sums(zeta: f64) -> AsymptoticSums {
    let mut u = 1.0;
    let mut s = AsymptoticSums {
        u_alt: 1.0,
        u_pos: 1.0,
        v_alt: 1.0,
        v_pos: 1.0,
        u_even: 1.0,
        u_odd: 0.0,
        v_even: 1.0,
        v_odd: 0.0,
    };
    let mut prev = f64::INFINITY;
    for k in 1u32..40 {
        let kf = k as f64;
        u *= (6.0 * kf - 1.0) * (6.0 * kf - 3.0) * (6.0 * kf - 5.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
        let v = u * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        let tu = u / zeta.powi(k as i32);
        if tu.abs() >= prev {
            break; // optimal truncation
        }
        prev = tu.abs();
        let tv = v / zeta.powi(k as i32);
        let alt = if k % 2 == 0 { 1.0 } else { -1.0 };
        s.u_alt += alt * tu;
        s.u_pos += tu;
        s.v_alt += alt * tv;
        s.v_pos += tv;
        // Oscillatory splits: sum (-1)^j u_{2j} / zeta^{2j} etc.
        let half_sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            s.u_even += half_sign * tu;
            s.v_even += half_sign * tv;
        } else {
            s.u_odd += half_sign * tu;
            s.v_odd += half_sign * tv;
        }
        if tu.abs() < 1e-18 {
            break;
        }
    }
    s
}

/// All four Airy values at once; the public accessors pick components.
fn airy_all(x: f64) -> (f64, f64, f64, f64) {
    if x >= ASYMPTOTIC_CUT {
        let zeta = 2.0 / 3.0 * x.powf(1.5);
        let s = asymptotic_sums(zeta);
        let root = x.powf(0.25);
        let em = (-zeta).exp();
        let ep = zeta.exp();
        let ai = em / (2.0 * SQRT_PI * root) * s.u_alt;
        let aip = -root * em / (2.0 * SQRT_PI) * s.v_alt;
        let bi = ep / (SQRT_PI * root) * s.u_pos;
        let bip = root * ep / SQRT_PI * s.v_pos;
        (ai, aip, bi, bip)
    } else if x <= -ASYMPTOTIC_CUT {
        let t = -x;
        let zeta = 2.0 / 3.0 * t.powf(1.5);
        let s = asymptotic_sums(zeta);
        let root = t.powf(0.25);
        let (sn, cs) = (zeta - std::f64::consts::FRAC_PI_4).sin_cos();
        let ai = (cs * s.u_even + sn * s.u_odd) / (SQRT_PI * root);
        let aip = root / SQRT_PI * (sn * s.v_even - cs * s.v_odd);
        let bi = (-sn * s.u_even + cs * s.u_odd) / (SQRT_PI * root);
        let bip = root / SQRT_PI * (cs * s.v_even + sn * s.v_odd);
        (ai, aip, bi, bip)
    } else if x >= 0.0 {
        // Ai decays with increasing x: step down from the asymptotic anchor.
        let zeta = 2.0 / 3.0 * ASYMPTOTIC_CUT.powf(1.5);
        let s = asymptotic_sums(zeta);
        let root = ASYMPTOTIC_CUT.powf(0.25);
        let em = (-zeta).exp();
        let ai_anchor = em / (2.0 * SQRT_PI * root) * s.u_alt;
        let aip_anchor = -root * em / (2.0 * SQRT_PI) * s.v_alt;
        let (ai, aip) = propagate(ASYMPTOTIC_CUT, x, ai_anchor, aip_anchor);
        // Bi grows with increasing x: step up from zero.
        let (bi, bip) = propagate(0.0, x, BI_ZERO, BIP_ZERO);
        (ai, aip, bi, bip)
    } else {
        let (ai, aip) = propagate(0.0, x, AI_ZERO, AIP_ZERO);
        let (bi, bip) = propagate(0.0, x, BI_ZERO, BIP_ZERO);
        (ai, aip, bi, bip)
    }
}

fn check_finite(x: f64) -> Result<(), SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::Domain {
            value: x,
            reason: "Airy argument must be finite".into(),
        });
    }
    Ok(())
}

pub fn airy_ai(x: f64) -> Result<f64, SpecFunError> {
    check_finite(x)?;
    Ok(airy_all(x).0)
}

pub fn airy_ai_prime(x: f64) -> Result<f64, SpecFunError> {
    check_finite(x)?;
    Ok(airy_all(x).1)
}

pub fn airy_bi(x: f64) -> Result<f64, SpecFunError> {
    check_finite(x)?;
    if x > BI_OVERFLOW_BOUND {
        return Err(SpecFunError::Range {
            value: x,
            bound: BI_OVERFLOW_BOUND,
        });
    }
    Ok(airy_all(x).2)
}

pub fn airy_bi_prime(x: f64) -> Result<f64, SpecFunError> {
    check_finite(x)?;
    if x > BI_OVERFLOW_BOUND {
        return Err(SpecFunError::Range {
            value: x,
            bound: BI_OVERFLOW_BOUND,
        });
    }
    Ok(airy_all(x).3)
}
