//! Independent numerical cross-checks: finite-difference PDE residuals,
//! the boundary-integral identity, direct Theta-integral evaluation, and
//! the full validation suite behind the `validate` subcommand.
//!
//! Every check re-derives its target quantity by a route different from the
//! production code path, at fixed deterministic sample points, and reports
//! a measured value against the owning module's documented bound.

use num_complex::Complex64;
use thiserror::Error;

use crate::corner_green::{self, CornerGeometry, FreeBeam};
use crate::gravity_green::{
    self, GravityContext, ScreenPoint3D, TransverseMode,
};
use crate::quadrature::{
    integrate_adaptive, integrate_oscillatory_tail, QuadratureSpec,
};
use crate::specfun::{
    airy_ai, airy_ai_prime, airy_bi, airy_bi_prime, airy_corner_bracket, hankel1,
    theta_integral, ComplexAmplitude,
};

/// Outcome of one validation check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
    pub details: String,
}

impl CheckReport {
    fn new(name: &str, measured: f64, bound: f64, details: String) -> Self {
        CheckReport {
            check_name: name.to_string(),
            measured,
            bound,
            passed: measured <= bound,
            details,
        }
    }

    fn failure(name: &str, bound: f64, err: impl std::fmt::Display) -> Self {
        CheckReport {
            check_name: name.to_string(),
            measured: f64::INFINITY,
            bound,
            passed: false,
            details: format!("evaluation failed: {err}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("degenerate geometry: point within {distance:.3e} of a source/image, need {required:.3e}")]
    TooCloseToSource { distance: f64, required: f64 },
    #[error(transparent)]
    SpecFun(#[from] crate::specfun::SpecFunError),
    #[error(transparent)]
    Quadrature(#[from] crate::quadrature::QuadratureError),
    #[error(transparent)]
    Corner(#[from] corner_green::CornerError),
    #[error(transparent)]
    Gravity(#[from] gravity_green::GravityError),
}

/// Deterministic sample-point generator (64-bit LCG, fixed seed per check).
struct Sampler(u64);

impl Sampler {
    fn new(seed: u64) -> Self {
        Sampler(seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493))
    }

    /// Uniform in [0, 1).
    fn uniform(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

/// Relative Helmholtz residual |(Laplacian_h + k^2) G| at `r`, with the
/// 4th-order central-difference Laplacian at step `h`. Normalized by
/// k^2 |G|, or by |G| / d^2 (d the source distance) when k = 0.
pub fn helmholtz_residual<G>(
    green_eval: G,
    k: f64,
    r: [f64; 3],
    r_src: [f64; 3],
    h: f64,
) -> Result<f64, OracleError>
where
    G: Fn([f64; 3], [f64; 3]) -> ComplexAmplitude,
{
    // Stay clear of the source and all of its corner images.
    let mut min_dist = f64::INFINITY;
    for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let dx = r[0] - r_src[0];
        let dy = r[1] - a * r_src[1];
        let dz = r[2] - b * r_src[2];
        min_dist = min_dist.min((dx * dx + dy * dy + dz * dz).sqrt());
    }
    if min_dist < 10.0 * h {
        return Err(OracleError::TooCloseToSource {
            distance: min_dist,
            required: 10.0 * h,
        });
    }

    let g0 = green_eval(r, r_src);
    let mut lap = Complex64::new(0.0, 0.0);
    // f'' = (-f(-2h) + 16 f(-h) - 30 f(0) + 16 f(h) - f(2h)) / (12 h^2)
    const STENCIL: [(f64, f64); 4] = [(-2.0, -1.0), (-1.0, 16.0), (1.0, 16.0), (2.0, -1.0)];
    for axis in 0..3 {
        let mut sum = -30.0 * g0;
        for (mult, w) in STENCIL {
            let mut p = r;
            p[axis] += mult * h;
            sum += w * green_eval(p, r_src);
        }
        lap += sum / (12.0 * h * h);
    }
    let residual = (lap + k * k * g0).norm();
    let scale = if k > 0.0 {
        k * k
    } else {
        1.0 / (min_dist * min_dist)
    };
    Ok(residual / (scale * g0.norm()))
}

/// e^{ikR}/R differentiated in R: the radial factor of the normal
/// derivative of a point-source term.
fn radial_derivative_factor(k: f64, dist: f64) -> Complex64 {
    Complex64::new(-1.0 / dist, k) * Complex64::new(0.0, k * dist).exp() / dist
}

/// Direct boundary-integral evaluation of the screen wave function: the slit
/// surface integral of the beam value times the normal derivative of the
/// corner Green's function, with the infinite x' integral done by the
/// accelerated oscillatory integrator. Cross-checked against the windowed
/// Hankel form, which was obtained from the same surface integral
/// analytically.
pub fn boundary_solution_check(
    geometry: &CornerGeometry,
    beam: &FreeBeam,
    spec: &QuadratureSpec,
) -> CheckReport {
    const NAME: &str = "free_boundary_integral_route";
    const BOUND: f64 = 1e-3;
    let k = beam.k;
    let z = geometry.screen_z;
    let mut worst: f64 = 0.0;
    let mut details = String::new();

    for &spot_y in &[0.5 * geometry.y_sl, geometry.y_sl, 1.6 * geometry.y_sl] {
        let route_a = match corner_green::psi_exact(spot_y, geometry, beam, spec) {
            Ok(v) => v,
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        };

        // psi(r) = -(C z / 2 pi) int_slit dy' int dx' [q(R+)/R+ - q(R-)/R-],
        // the x' integral folded to 2 int_0^inf by symmetry in x' - x.
        let inner = |y_prime: f64| -> Result<Complex64, OracleError> {
            let rho_minus2 = (spot_y - y_prime) * (spot_y - y_prime) + z * z;
            let rho_plus2 = (spot_y + y_prime) * (spot_y + y_prime) + z * z;
            let tail = integrate_oscillatory_tail(
                |u| {
                    let r_m = (u * u + rho_minus2).sqrt();
                    let r_p = (u * u + rho_plus2).sqrt();
                    // each term carries the chain-rule factor dR/dz' = -z/R,
                    // with the shared -z pulled out front
                    radial_derivative_factor(k, r_m) / r_m
                        - radial_derivative_factor(k, r_p) / r_p
                },
                |u| k * (u * u + rho_minus2).sqrt(),
                0.0,
                spec,
            )?;
            Ok(2.0 * tail.value)
        };

        let outer = integrate_adaptive(
            |y_prime| inner(y_prime).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
            geometry.y_sl - 0.5 * geometry.delta,
            geometry.y_sl + 0.5 * geometry.delta,
            spec,
        );
        let route_b = match outer {
            Ok(r) => -beam.amplitude_c * z / (2.0 * std::f64::consts::PI) * r.value,
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        };

        let rel = (route_a - route_b).norm() / route_a.norm();
        if rel > worst {
            worst = rel;
            details = format!(
                "worst spot: windowed Hankel form {route_a} vs surface integral {route_b} at y = {spot_y}, z = {z}"
            );
        }
    }
    CheckReport::new(NAME, worst, BOUND, details)
}

/// Direct evaluation of the Theta-weighted Airy integral
/// Ai(sigma) int_{-inf}^{sigma} Bi + Bi(sigma) int_{sigma}^{inf} Ai.
pub fn theta_integral_numeric(sigma: f64, spec: &QuadratureSpec) -> Result<f64, OracleError> {
    Ok(theta_integral(sigma, spec)?)
}

/// Airy Wronskian deviation |pi (Ai Bi' - Ai' Bi) - 1| maximized over a
/// fixed grid, with `bi_scale` multiplying the Bi side (1.0 for the real
/// check; the suite's sensitivity canary perturbs it).
pub fn wronskian_check(bi_scale: f64) -> CheckReport {
    const NAME: &str = "airy_wronskian";
    const BOUND: f64 = 1e-10;
    let mut worst: f64 = 0.0;
    let mut at = 0.0;
    let mut s = -12.0;
    while s <= 6.0 {
        let w = (|| -> Result<f64, crate::specfun::SpecFunError> {
            Ok(airy_ai(s)? * bi_scale * airy_bi_prime(s)?
                - airy_ai_prime(s)? * bi_scale * airy_bi(s)?)
        })();
        match w {
            Ok(w) => {
                let dev = (std::f64::consts::PI * w - 1.0).abs();
                if dev > worst {
                    worst = dev;
                    at = s;
                }
            }
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
        s += 0.375;
    }
    CheckReport::new(
        NAME,
        worst,
        BOUND,
        format!("max |pi W[Ai, Bi] - 1| over [-12, 6], worst at sigma = {at}"),
    )
}

fn airy_ode_residual() -> CheckReport {
    const NAME: &str = "airy_ode_residual";
    const BOUND: f64 = 1e-6;
    // Offset grid avoiding sigma = 0, where the documented bound
    // 1e-6 (1 + |f|) |sigma| degenerates to zero against FD noise.
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    let mut details = String::new();
    let mut s = -7.97;
    while s <= 5.0 {
        for f in [airy_ai as fn(f64) -> _, airy_bi as fn(f64) -> _] {
            let vals: Result<Vec<f64>, _> = [-2.0, -1.0, 0.0, 1.0, 2.0]
                .iter()
                .map(|m| f(s + m * h))
                .collect();
            let v = match vals {
                Ok(v) => v,
                Err(e) => return CheckReport::failure(NAME, BOUND, e),
            };
            let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
            let ratio = (d2 - s * v[2]).abs() / ((1.0 + v[2].abs()) * s.abs());
            if ratio > worst {
                worst = ratio;
                details = format!("worst at sigma = {s}");
            }
        }
        s += 0.25;
    }
    CheckReport::new(NAME, worst, BOUND, details)
}

fn hankel_derivative_identity() -> CheckReport {
    const NAME: &str = "hankel_derivative_identity";
    const BOUND: f64 = 1e-6;
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    let mut at = 0.0;
    for &x in &[0.7, 2.0, 5.0, 9.0, 15.0, 40.0, 120.0] {
        let r = (|| -> Result<f64, crate::specfun::SpecFunError> {
            let d = (hankel1(1, x + h)? - hankel1(1, x - h)?) / (2.0 * h);
            let expect = hankel1(0, x)? - hankel1(1, x)? / x;
            Ok((d - expect).norm())
        })();
        match r {
            Ok(dev) => {
                if dev > worst {
                    worst = dev;
                    at = x;
                }
            }
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    CheckReport::new(NAME, worst, BOUND, format!("worst at x = {at}"))
}

fn hankel_asymptotic_envelope() -> CheckReport {
    const NAME: &str = "hankel_asymptotic_envelope";
    // The leading asymptotic form deviates from H0 by 1/(8x) and from H1 by
    // 3/(8x) exactly; the check certifies the 1/x envelope with headroom.
    const BOUND: f64 = 0.5;
    let mut worst: f64 = 0.0;
    let mut details = String::new();
    for &x in &[20.0, 50.0, 150.0, 600.0] {
        for order in [0u32, 1] {
            let r = (|| -> Result<f64, crate::specfun::SpecFunError> {
                let exact = hankel1(order, x)?;
                let phase = x - (2 * order + 1) as f64 * std::f64::consts::FRAC_PI_4;
                let leading = (2.0 / (std::f64::consts::PI * x)).sqrt()
                    * Complex64::new(0.0, phase).exp();
                Ok((exact - leading).norm() / exact.norm() * x)
            })();
            match r {
                Ok(scaled) => {
                    if scaled > worst {
                        worst = scaled;
                        details = format!("worst x * rel_dev at x = {x}, order {order}");
                    }
                }
                Err(e) => return CheckReport::failure(NAME, BOUND, e),
            }
        }
    }
    CheckReport::new(NAME, worst, BOUND, details)
}

fn airy_integral_unity(spec: &QuadratureSpec) -> CheckReport {
    const NAME: &str = "airy_integral_unity";
    const BOUND: f64 = 1e-8;
    // int_{-inf}^{inf} Ai = 1: oscillatory lower tail below -8 plus
    // segmented quadrature up to the decay cutoff.
    let r = (|| -> Result<f64, OracleError> {
        let tail = integrate_oscillatory_tail(
            |t| Complex64::new(airy_ai(-t).unwrap_or(f64::NAN), 0.0),
            |t| 2.0 / 3.0 * t.powf(1.5) + std::f64::consts::FRAC_PI_4,
            8.0,
            spec,
        )?;
        let mut total = tail.value.re;
        let mut left = -8.0;
        while left < 12.0 {
            let body = integrate_adaptive(
                |s| Complex64::new(airy_ai(s).unwrap_or(f64::NAN), 0.0),
                left,
                left + 1.0,
                spec,
            )?;
            total += body.value.re;
            left += 1.0;
        }
        Ok(total)
    })();
    match r {
        Ok(total) => CheckReport::new(
            NAME,
            (total - 1.0).abs(),
            BOUND,
            format!("int Ai over the real line = {total}"),
        ),
        Err(e) => CheckReport::failure(NAME, BOUND, e),
    }
}

fn hankel_representation(spec: &QuadratureSpec) -> CheckReport {
    const NAME: &str = "hankel_line_source_representation";
    const BOUND: f64 = 1e-6;
    // Collapsing the line of 3D point sources: 2 int_0^inf e^{ikR}/R du
    // with R = sqrt(u^2 + rho^2) equals i pi H0(k rho).
    let mut worst: f64 = 0.0;
    let mut details = String::new();
    for &(k, rho) in &[(1.0, 3.0), (2.0, 7.5), (1.0, 40.0)] {
        let r = (|| -> Result<f64, OracleError> {
            let tail = integrate_oscillatory_tail(
                |u| {
                    let dist = (u * u + rho * rho).sqrt();
                    Complex64::new(0.0, k * dist).exp() / dist
                },
                |u| k * (u * u + rho * rho).sqrt(),
                0.0,
                spec,
            )?;
            let direct = 2.0 * tail.value;
            let reference = Complex64::new(0.0, std::f64::consts::PI) * hankel1(0, k * rho)?;
            Ok((direct - reference).norm() / reference.norm())
        })();
        match r {
            Ok(rel) => {
                if rel > worst {
                    worst = rel;
                    details = format!("worst at k = {k}, rho = {rho}");
                }
            }
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    CheckReport::new(NAME, worst, BOUND, details)
}

fn corner_dirichlet() -> CheckReport {
    const NAME: &str = "corner_green_dirichlet";
    const BOUND: f64 = 1e-12;
    let mut s = Sampler::new(7);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let k = s.range(0.5, 3.0);
        let src = [s.range(-1.0, 1.0), s.range(0.5, 3.0), s.range(0.5, 3.0)];
        let on_mirror = [s.range(-1.0, 1.0), 0.0, s.range(0.5, 3.0)];
        let on_source_plane = [s.range(-1.0, 1.0), s.range(0.5, 3.0), 0.0];
        for r in [on_mirror, on_source_plane] {
            match corner_green::green_corner(r, src, k) {
                Ok(g) => worst = worst.max(g.norm()),
                Err(e) => return CheckReport::failure(NAME, BOUND, e),
            }
        }
    }
    CheckReport::new(
        NAME,
        worst,
        BOUND,
        "max |G| over random points on both boundary planes".into(),
    )
}

fn corner_helmholtz() -> CheckReport {
    const NAME: &str = "corner_green_helmholtz_residual";
    const BOUND: f64 = 1e-4;
    let mut s = Sampler::new(11);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let k = s.range(0.5, 2.0);
        let src = [s.range(-0.5, 0.5), s.range(2.0, 4.0), s.range(2.0, 4.0)];
        let r = [s.range(-0.5, 0.5), s.range(6.0, 9.0), s.range(6.0, 9.0)];
        let res = helmholtz_residual(
            |p, q| corner_green::green_corner(p, q, k).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
            k,
            r,
            src,
            1e-3 / k,
        );
        match res {
            Ok(v) => worst = worst.max(v),
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    CheckReport::new(
        NAME,
        worst,
        BOUND,
        "max relative (Laplacian + k^2) residual at random interior points".into(),
    )
}

fn free_space_helmholtz() -> CheckReport {
    const NAME: &str = "free_space_helmholtz_residual";
    const BOUND: f64 = 1e-6;
    let point_source = |p: [f64; 3], q: [f64; 3]| {
        let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt();
        Complex64::new(0.0, d).exp() / d
    };
    let laplace = |p: [f64; 3], q: [f64; 3]| {
        let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt();
        Complex64::new(1.0 / d, 0.0)
    };
    // R = 5/k with k = 1, step 1e-3/k
    let r = [3.0, 4.0, 0.0];
    let src = [0.0, 0.0, 0.0];
    let helmholtz = helmholtz_residual(point_source, 1.0, r, src, 1e-3);
    let harmonic = helmholtz_residual(laplace, 0.0, r, src, 1e-3);
    match (helmholtz, harmonic) {
        (Ok(a), Ok(b)) => CheckReport::new(
            NAME,
            a.max(b),
            BOUND,
            format!("e^{{ikR}}/R residual {a:.3e}, 1/R Laplace residual {b:.3e}"),
        ),
        (Err(e), _) | (_, Err(e)) => CheckReport::failure(NAME, BOUND, e),
    }
}

/// Internal-unit gravity context shared by the suite: length_lg = 1,
/// turning point at x = 4.
fn suite_ctx() -> GravityContext {
    GravityContext::new(1.0, 1.0, 0.5, 2.0)
}

fn reduced_green_structure() -> Vec<CheckReport> {
    let ctx = suite_ctx();
    let mut s = Sampler::new(23);
    let mut continuity: f64 = 0.0;
    let mut jump: f64 = 0.0;
    let mut xweighted: f64 = 0.0;
    let mut reciprocity: f64 = 0.0;
    let mut ode: f64 = 0.0;
    let bound_fail = |e: gravity_green::GravityError| {
        vec![CheckReport::failure("reduced_green_structure", 0.0, e)]
    };

    for _ in 0..10 {
        let mode = TransverseMode::new(s.range(-1.5, 1.5), s.range(-1.5, 1.5), &ctx);
        let x_src = s.range(1.0, 6.0);
        let g = |x: f64| gravity_green::reduced_green(x, x_src, &mode, &ctx);

        // value continuity across the source point: the straddling
        // difference g(x+eps) - g(x-eps) is jump + 2 eps g'; Richardson in
        // eps cancels the slope so only the genuine jump remains.
        let eps = 1e-6;
        let straddle = |e: f64| -> Option<f64> {
            Some(g(x_src + e).ok()? - g(x_src - e).ok()?)
        };
        let (j1, j2, at) = match (straddle(eps), straddle(2.0 * eps), g(x_src).ok()) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return bound_fail(gravity_green::GravityError::InvalidContext("eval".into())),
        };
        let scale = at.abs().max(1e-30);
        continuity = continuity.max((2.0 * j1 - j2).abs() / scale);

        // derivative jump of -1 and the x-weighted closure, with
        // second-order one-sided differences anchored at the (continuous)
        // source-point value so the truncation error is O(h^2 g''')
        let h = 1e-6 * ctx.length_lg;
        let vals: Vec<f64> = [-2.0, -1.0, 1.0, 2.0]
            .iter()
            .map(|m| g(x_src + m * h).unwrap_or(f64::NAN))
            .collect();
        let d_below = (3.0 * at - 4.0 * vals[1] + vals[0]) / (2.0 * h);
        let d_above = (-3.0 * at + 4.0 * vals[2] - vals[3]) / (2.0 * h);
        jump = jump.max((d_above - d_below + 1.0).abs());
        // x (dg jump) - (g jump) = -x_src; the value jump itself comes from
        // the slope-cancelling Richardson combination.
        let g_jump = 2.0 * (vals[2] - vals[1]) - (vals[3] - vals[0]);
        xweighted = xweighted.max((x_src * (d_above - d_below) - g_jump + x_src).abs());

        // bit-exact reciprocity
        let a = s.range(1.0, 6.0);
        let (ab, ba) = match (
            gravity_green::reduced_green(a, x_src, &mode, &ctx),
            gravity_green::reduced_green(x_src, a, &mode, &ctx),
        ) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return bound_fail(gravity_green::GravityError::InvalidContext("eval".into())),
        };
        if ab.to_bits() != ba.to_bits() {
            reciprocity = reciprocity.max((ab - ba).abs().max(1.0));
        }

        // homogeneous Airy ODE away from the source
        let x = if s.uniform() < 0.5 { x_src - 1.5 } else { x_src + 1.5 };
        let hh = 1e-2;
        let v: Vec<f64> = [-2.0, -1.0, 0.0, 1.0, 2.0]
            .iter()
            .map(|m| g(x + m * hh).unwrap_or(f64::NAN))
            .collect();
        let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * hh * hh);
        let sig = gravity_green::sigma(x, &mode, &ctx);
        ode = ode.max((d2 - sig * v[2]).abs() / (1.0 + v[2].abs()));
    }

    vec![
        CheckReport::new(
            "reduced_green_continuity",
            continuity,
            1e-10,
            "relative value mismatch across the source point, 10 samples".into(),
        ),
        CheckReport::new(
            "reduced_green_derivative_jump",
            jump,
            1e-6,
            "|jump + 1| by straddling finite differences".into(),
        ),
        CheckReport::new(
            "reduced_green_xweighted_jump",
            xweighted,
            1e-6,
            "x-weighted jump combination against -x_src".into(),
        ),
        CheckReport::new(
            "reduced_green_reciprocity",
            reciprocity,
            0.0,
            "bit-exact symmetry under argument exchange".into(),
        ),
        CheckReport::new(
            "reduced_green_airy_ode",
            ode,
            1e-5,
            "normalized 4th-order FD residual of the homogeneous equation".into(),
        ),
    ]
}

fn free_psi_antisymmetry(spec: &QuadratureSpec) -> CheckReport {
    const NAME: &str = "free_psi_antisymmetry";
    const BOUND: f64 = 1e-8;
    let geometry = CornerGeometry {
        y_sl: 20.0,
        delta: 0.05,
        screen_z: 600.0,
    };
    let beam = FreeBeam::new(1.0);
    let mut worst: f64 = 0.0;
    for &y in &[4.0, 13.0, 27.0] {
        let r = (|| -> Result<f64, corner_green::CornerError> {
            let plus = corner_green::psi_exact(y, &geometry, &beam, spec)?;
            let minus = corner_green::psi_exact(-y, &geometry, &beam, spec)?;
            Ok((plus + minus).norm() / plus.norm())
        })();
        match r {
            Ok(v) => worst = worst.max(v),
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    CheckReport::new(NAME, worst, BOUND, "relative |psi(y) + psi(-y)|".into())
}

fn bracket_overlap(spec: &QuadratureSpec) -> CheckReport {
    const NAME: &str = "bracket_evaluation_paths";
    const BOUND: f64 = 1e-6;
    // Closed form against the direct Theta-integral on the overlap window.
    let mut worst: f64 = 0.0;
    let mut sigma = 3.0;
    while sigma <= 5.0 {
        let r = (|| -> Result<f64, OracleError> {
            let closed = airy_corner_bracket(sigma, Complex64::new(0.0, 0.0))?.re;
            let theta = std::f64::consts::PI * theta_integral(sigma, spec)?;
            Ok((closed - theta).abs() / theta.abs())
        })();
        match r {
            Ok(v) => worst = worst.max(v),
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
        sigma += 0.5;
    }
    CheckReport::new(NAME, worst, BOUND, "closed form vs Theta-integral on [3, 5]".into())
}

fn theta_vs_bracket(spec: &QuadratureSpec) -> CheckReport {
    const NAME: &str = "theta_integral_closed_form";
    const BOUND: f64 = 1e-6;
    let mut worst: f64 = 0.0;
    let mut details = String::new();
    for &sigma in &[-4.0, -2.0, -1.0, 0.0, 1.0, 2.0] {
        let r = (|| -> Result<f64, OracleError> {
            let direct = theta_integral_numeric(sigma, spec)?;
            let closed = airy_corner_bracket(sigma, Complex64::new(0.0, 0.0))?.re
                / std::f64::consts::PI;
            Ok((direct - closed).abs() / closed.abs().max(1e-3))
        })();
        match r {
            Ok(v) => {
                if v > worst {
                    worst = v;
                    details = format!("worst at sigma = {sigma}");
                }
            }
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    CheckReport::new(NAME, worst, BOUND, details)
}

// ---------- full-level additions ----------

fn free_exact_vs_asymptotic(spec: &QuadratureSpec) -> CheckReport {
    const NAME: &str = "free_exact_vs_asymptotic";
    const BOUND: f64 = 0.02;
    let geometry = CornerGeometry {
        y_sl: 20.0,
        delta: 0.05,
        screen_z: 600.0,
    };
    let beam = FreeBeam::new(1.0);
    let mut worst: f64 = 0.0;
    for &y in &[5.0, 15.0, 30.0, 45.0] {
        let r = (|| -> Result<f64, corner_green::CornerError> {
            let exact = corner_green::psi_exact(y, &geometry, &beam, spec)?;
            let asym = corner_green::psi_asymptotic(y, &geometry, &beam)?;
            Ok((exact.norm_sqr() - asym.norm_sqr()).abs() / exact.norm_sqr())
        })();
        match r {
            Ok(v) => worst = worst.max(v),
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    CheckReport::new(NAME, worst, BOUND, "relative intensity difference in the far field".into())
}

fn free_fringe_spacing() -> CheckReport {
    const NAME: &str = "free_fringe_spacing";
    const BOUND: f64 = 5e-2;
    let geometry = CornerGeometry {
        y_sl: 20.0,
        delta: 0.05,
        screen_z: 600.0,
    };
    let beam = FreeBeam::new(1.0);
    // The screen intensity vanishes on the axis and at the destructive
    // minima; near the axis the first off-axis minimum sits one predicted
    // fringe spacing pi z / (k y_sl) out (hyperbola corrections push the
    // higher minima progressively wider, so only the first is compared).
    let expected = std::f64::consts::PI * geometry.screen_z / (beam.k * geometry.y_sl);
    let n = 3000;
    let (lo, hi) = (10.0, 160.0);
    let mut intensities = Vec::with_capacity(n);
    for i in 0..n {
        let y = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        match corner_green::psi_asymptotic(y, &geometry, &beam) {
            Ok(p) => intensities.push((y, p.norm_sqr())),
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    for i in 1..n - 1 {
        if intensities[i].1 < intensities[i - 1].1 && intensities[i].1 < intensities[i + 1].1 {
            // parabolic refinement of the grid minimum
            let (ym, im) = intensities[i];
            let h = intensities[i + 1].0 - ym;
            let denom = intensities[i - 1].1 - 2.0 * im + intensities[i + 1].1;
            let shift = 0.5 * h * (intensities[i - 1].1 - intensities[i + 1].1) / denom;
            let y_min = ym + shift;
            return CheckReport::new(
                NAME,
                (y_min - expected).abs() / expected,
                BOUND,
                format!("first off-axis minimum at y = {y_min:.4}, predicted {expected:.4}"),
            );
        }
    }
    CheckReport::failure(NAME, BOUND, "no interference minimum found in the scan window")
}

fn gravity_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-8,
        rel_tol: 1e-8,
        ..QuadratureSpec::default()
    }
}

fn gravity_psi_structure() -> Vec<CheckReport> {
    let ctx = suite_ctx();
    let spec = gravity_spec();
    let geometry = CornerGeometry {
        y_sl: 1.0,
        delta: 0.1,
        screen_z: 5.0,
    };
    let k_max = gravity_green::kperp_cutoff(&[4.0], &ctx, &spec);
    let at = |y: f64, delta: f64| {
        let geom = CornerGeometry { delta, ..geometry };
        gravity_green::psi_gravity(
            ScreenPoint3D { x: 4.0, y, z: geometry.screen_z },
            &geom,
            &ctx,
            k_max,
            &spec,
        )
    };

    let mut reports = Vec::new();

    match (at(0.0, 0.1), at(1.5, 0.1), at(-1.5, 0.1)) {
        (Ok(zero), Ok(plus), Ok(minus)) => {
            let scale = plus.norm().max(1e-6);
            reports.push(CheckReport::new(
                "gravity_psi_mirror_zero",
                zero.norm() / scale,
                1e-4,
                "relative |psi| on the mirror plane".into(),
            ));
            reports.push(CheckReport::new(
                "gravity_psi_antisymmetry",
                (plus + minus).norm() / scale,
                1e-4,
                "relative |psi(y) + psi(-y)|".into(),
            ));
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
            reports.push(CheckReport::failure("gravity_psi_mirror_zero", 1e-4, &e));
            reports.push(CheckReport::failure("gravity_psi_antisymmetry", 1e-4, &e));
        }
    }

    match (at(1.2, 1e-2), at(1.2, 1e-3), at(1.2, 1e-4)) {
        (Ok(a), Ok(b), Ok(c)) => {
            let (ra, rb, rc) = (a / 1e-2, b / 1e-3, c / 1e-4);
            let measured =
                ((rb - ra).norm() / ra.norm()).max((rc - rb).norm() / ra.norm());
            reports.push(CheckReport::new(
                "gravity_psi_delta_scaling",
                measured,
                1e-2,
                "psi / delta convergence as the slit narrows".into(),
            ));
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
            reports.push(CheckReport::failure("gravity_psi_delta_scaling", 1e-2, &e));
        }
    }

    reports
}

fn gravity_green_structure() -> Vec<CheckReport> {
    let ctx = suite_ctx();
    let spec = gravity_spec();
    let k_max = 2.5;
    let mut reports = Vec::new();

    // Dirichlet planes of the corner function
    let r = ScreenPoint3D { x: 4.0, y: 1.0, z: 2.0 };
    let mut worst: f64 = 0.0;
    let mut failed = None;
    for src in [
        ScreenPoint3D { x: 3.5, y: 0.0, z: 1.5 },
        ScreenPoint3D { x: 3.5, y: 1.5, z: 0.0 },
    ] {
        match gravity_green::green_gravity_corner(r, src, &ctx, k_max, &spec) {
            Ok(g) => worst = worst.max(g.norm()),
            Err(e) => failed = Some(e),
        }
    }
    reports.push(match failed {
        None => CheckReport::new(
            "gravity_corner_dirichlet",
            worst,
            1e-7,
            "|G| for sources on each boundary plane".into(),
        ),
        Some(e) => CheckReport::failure("gravity_corner_dirichlet", 1e-7, e),
    });

    // Image-sum identity corner = signed half-space combination
    let r_src = ScreenPoint3D { x: 3.6, y: 0.4, z: 0.7 };
    let image_sum = (|| -> Result<f64, gravity_green::GravityError> {
        let corner = gravity_green::green_gravity_corner(r, r_src, &ctx, k_max, &spec)?;
        let mut images = Complex64::new(0.0, 0.0);
        for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let src = ScreenPoint3D { x: r_src.x, y: a * r_src.y, z: b * r_src.z };
            images += a * b * gravity_green::green_gravity_halfspace(r, src, &ctx, k_max, &spec)?;
        }
        Ok((corner - images).norm() / images.norm().max(1e-12))
    })();
    reports.push(match image_sum {
        Ok(v) => CheckReport::new(
            "gravity_corner_image_sum",
            v,
            1e-6,
            "corner function vs four signed half-space images".into(),
        ),
        Err(e) => CheckReport::failure("gravity_corner_image_sum", 1e-6, e),
    });

    // Truncation certificate for the cutoff policy
    let k_cut = gravity_green::kperp_cutoff(&[3.5, 4.0, 4.5], &ctx, &spec);
    let mut ai_worst: f64 = 0.0;
    let mut ai_failed = None;
    for &x in &[3.5, 4.0, 4.5] {
        let mode = TransverseMode::new(k_cut, 0.0, &ctx);
        let s = gravity_green::sigma(x, &mode, &ctx);
        match airy_ai(s) {
            Ok(a) => ai_worst = ai_worst.max(a / spec.kperp_truncation),
            Err(e) => ai_failed = Some(e),
        }
    }
    reports.push(match ai_failed {
        None => CheckReport::new(
            "gravity_kperp_truncation",
            ai_worst,
            1.0,
            "Ai at the cutoff edge relative to the truncation threshold".into(),
        ),
        Some(e) => CheckReport::failure("gravity_kperp_truncation", 1.0, e),
    });

    reports
}

fn free_reduction_chain(spec: &QuadratureSpec) -> CheckReport {
    const NAME: &str = "free_hankel_reduction_chain";
    const BOUND: f64 = 1e-3;
    // The windowed H1 form equals the z-derivative of the windowed H0 form.
    let geometry = CornerGeometry {
        y_sl: 5.0,
        delta: 0.4,
        screen_z: 40.0,
    };
    let beam = FreeBeam::new(1.0);
    let h0_form = |y: f64, z: f64| -> Result<Complex64, OracleError> {
        let r = integrate_adaptive(
            |yp| {
                let plus = hankel1(0, beam.k * (y + yp).hypot(z));
                let minus = hankel1(0, beam.k * (y - yp).hypot(z));
                match (plus, minus) {
                    (Ok(p), Ok(m)) => p - m,
                    _ => Complex64::new(f64::NAN, f64::NAN),
                }
            },
            geometry.y_sl - 0.5 * geometry.delta,
            geometry.y_sl + 0.5 * geometry.delta,
            spec,
        )?;
        Ok(Complex64::new(0.0, 0.5) * beam.amplitude_c * r.value)
    };
    let mut worst: f64 = 0.0;
    for &y in &[3.0, 7.0, 11.0] {
        let r = (|| -> Result<f64, OracleError> {
            let h = 1e-4;
            let derivative = (h0_form(y, geometry.screen_z + h)?
                - h0_form(y, geometry.screen_z - h)?)
                / (2.0 * h);
            let windowed = corner_green::psi_exact(y, &geometry, &beam, spec)?;
            Ok((derivative - windowed).norm() / windowed.norm())
        })();
        match r {
            Ok(v) => worst = worst.max(v),
            Err(e) => return CheckReport::failure(NAME, BOUND, e),
        }
    }
    CheckReport::new(NAME, worst, BOUND, "z-derivative route vs windowed H1 form".into())
}

/// Suite depth: `Fast` finishes in seconds, `Full` adds the expensive
/// boundary-integral, fringe-statistics and gravitational checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationLevel {
    Fast,
    Full,
}

/// Run the validation suite. Failures are reported, never thrown; the report
/// list is sorted by check name and deterministic across runs.
pub fn run_validation_suite(level: ValidationLevel) -> Vec<CheckReport> {
    let spec = QuadratureSpec::default();
    let mut reports = vec![
        wronskian_check(1.0),
        airy_ode_residual(),
        hankel_derivative_identity(),
        hankel_asymptotic_envelope(),
        airy_integral_unity(&spec),
        hankel_representation(&spec),
        corner_dirichlet(),
        corner_helmholtz(),
        free_space_helmholtz(),
        free_psi_antisymmetry(&spec),
        bracket_overlap(&spec),
        theta_vs_bracket(&spec),
    ];
    reports.extend(reduced_green_structure());

    if level == ValidationLevel::Full {
        let geometry = CornerGeometry {
            y_sl: 5.0,
            delta: 0.4,
            screen_z: 200.0,
        };
        reports.push(boundary_solution_check(&geometry, &FreeBeam::new(1.0), &gravity_spec()));
        reports.push(free_exact_vs_asymptotic(&spec));
        reports.push(free_fringe_spacing());
        reports.push(free_reduction_chain(&spec));
        reports.extend(gravity_psi_structure());
        reports.extend(gravity_green_structure());
    }

    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    reports
}
