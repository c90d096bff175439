//! Lloyd interferometer in a linear gravitational potential: the
//! dimensionless sigma coordinate, the reduced one-dimensional Green's
//! function built from Airy functions, the transverse-Fourier half-space and
//! corner Green's functions, and the screen wave function.
//!
//! The x axis points along gravity (mirror potential rising with x), the
//! transverse plane is (y, z) with the Lloyd mirror at y = 0 and the screen
//! at fixed z.

use num_complex::Complex64;
use thiserror::Error;

use crate::corner_green::CornerGeometry;
use crate::quadrature::{integrate_kperp_2d, QuadratureError, QuadratureSpec};
use crate::specfun::{
    airy_ai, airy_bi, airy_corner_bracket_with, theta_core_table, ComplexAmplitude,
    SpecFunError, BRACKET_SIGMA_SWITCH,
};

/// Physical context of the gravitational runs. All quantities are in one
/// consistent unit system; the CLI feeds this either in SI or in internal
/// units where `length_lg` is 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityContext {
    pub hbar: f64,
    pub mass_m: f64,
    pub accel_g: f64,
    pub energy_e: f64,
    /// Free constant multiplying the Ai x Ai homogeneous admixture (after
    /// the cube-root rescaling absorbed into the definition).
    pub lambda: ComplexAmplitude,
    /// Gravitational length (hbar^2 / (2 m^2 g))^{1/3}; derived, kept as a
    /// field so configurations round-trip, checked for consistency.
    pub length_lg: f64,
    pub amplitude_c: ComplexAmplitude,
}

impl GravityContext {
    /// Context with the derived length filled in, lambda = 0 and C = 1.
    pub fn new(hbar: f64, mass_m: f64, accel_g: f64, energy_e: f64) -> Self {
        let length_lg = (hbar * hbar / (2.0 * mass_m * mass_m * accel_g)).cbrt();
        GravityContext {
            hbar,
            mass_m,
            accel_g,
            energy_e,
            lambda: Complex64::new(0.0, 0.0),
            length_lg,
            amplitude_c: Complex64::new(1.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<(), GravityError> {
        if !(self.hbar > 0.0 && self.mass_m > 0.0 && self.accel_g > 0.0) {
            return Err(GravityError::InvalidContext(
                "hbar, mass_m and accel_g must be positive".into(),
            ));
        }
        let derived =
            (self.hbar * self.hbar / (2.0 * self.mass_m * self.mass_m * self.accel_g)).cbrt();
        if !((self.length_lg - derived).abs() <= 1e-12 * derived) {
            return Err(GravityError::InvalidContext(format!(
                "length_lg = {} inconsistent with (hbar, m, g): expected {derived}",
                self.length_lg
            )));
        }
        Ok(())
    }

    /// Height of the classical turning point for the k_perp = 0 mode.
    pub fn turning_point(&self) -> f64 {
        self.energy_e / (self.mass_m * self.accel_g)
    }
}

/// One transverse Fourier mode and its reduced longitudinal energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseMode {
    pub k_y: f64,
    pub k_z: f64,
    /// E - hbar^2 (k_y^2 + k_z^2) / (2 m).
    pub e_tilde: f64,
}

impl TransverseMode {
    pub fn new(k_y: f64, k_z: f64, ctx: &GravityContext) -> Self {
        let kperp2 = k_y * k_y + k_z * k_z;
        TransverseMode {
            k_y,
            k_z,
            e_tilde: ctx.energy_e - ctx.hbar * ctx.hbar * kperp2 / (2.0 * ctx.mass_m),
        }
    }
}

/// A point of the three-dimensional evaluation region: x along gravity,
/// (y, z) transverse with the mirror plane at y = 0 and screen at fixed z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenPoint3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Error)]
pub enum GravityError {
    #[error("invalid gravity configuration: {0}")]
    InvalidContext(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("k-space quadrature failed for {context}: {source}")]
    Quadrature {
        context: String,
        #[source]
        source: QuadratureError,
    },
    #[error("k-space quadrature did not converge for {context} (err {err_estimate:.3e})")]
    NotConverged { context: String, err_estimate: f64 },
}

/// Dimensionless Airy coordinate: (x - e_tilde / (m g)) / length_lg. Zero at
/// the classical turning point of the mode, slope 1/length_lg.
pub fn sigma(x: f64, mode: &TransverseMode, ctx: &GravityContext) -> f64 {
    (x - mode.e_tilde / (ctx.mass_m * ctx.accel_g)) / ctx.length_lg
}

/// Reduced Green's function along the gravity axis at fixed k_perp:
/// Re(lambda) Ai Ai plus pi length_lg times the Theta-ordered Ai/Bi product.
///
/// Evaluated through (sigma_hi, sigma_lo) = sigma at (max, min) of the two
/// heights, so reciprocity holds bit-for-bit and the two Theta branches
/// coincide at equal arguments, making the Theta(0) = 1/2 convention
/// consequence-free.
pub fn reduced_green(
    x: f64,
    x_src: f64,
    mode: &TransverseMode,
    ctx: &GravityContext,
) -> Result<f64, GravityError> {
    let s_hi = sigma(x.max(x_src), mode, ctx);
    let s_lo = sigma(x.min(x_src), mode, ctx);
    let ai_hi = airy_ai(s_hi)?;
    let ai_lo = airy_ai(s_lo)?;
    let bi_lo = airy_bi(s_lo)?;
    Ok(ctx.lambda.re * ai_hi * ai_lo + std::f64::consts::PI * ctx.length_lg * ai_hi * bi_lo)
}

/// Like `reduced_green` but keeping the imaginary part of lambda, for use
/// under the complex Fourier integrals.
fn reduced_green_complex(
    x: f64,
    x_src: f64,
    mode: &TransverseMode,
    ctx: &GravityContext,
) -> Result<Complex64, GravityError> {
    let s_hi = sigma(x.max(x_src), mode, ctx);
    let s_lo = sigma(x.min(x_src), mode, ctx);
    let ai_product = airy_ai(s_hi)? * airy_ai(s_lo)?;
    let theta_part = std::f64::consts::PI * ctx.length_lg * airy_ai(s_hi)? * airy_bi(s_lo)?;
    Ok(ctx.lambda * ai_product + theta_part)
}

/// Truncation policy for the transverse integrals: the smallest k_max at
/// which every mode's sigma, at each listed height, has passed the point
/// where Ai has dropped below `spec.kperp_truncation`.
pub fn kperp_cutoff(x_heights: &[f64], ctx: &GravityContext, spec: &QuadratureSpec) -> f64 {
    let mut sigma_cut = 1.0;
    while sigma_cut < 90.0 && airy_ai(sigma_cut).map_or(false, |a| a > spec.kperp_truncation) {
        sigma_cut += 0.25;
    }
    let mode0 = TransverseMode::new(0.0, 0.0, ctx);
    let sigma_min = x_heights
        .iter()
        .map(|&x| sigma(x, &mode0, ctx))
        .fold(f64::INFINITY, f64::min);
    // sigma grows with k_perp as (length_lg k_perp)^2 on top of the k = 0 value
    ((sigma_cut - sigma_min).max(1.0)).sqrt() / ctx.length_lg
}

fn require_converged(
    r: crate::quadrature::IntegralResult,
    context: &str,
) -> Result<Complex64, GravityError> {
    if !r.converged {
        return Err(GravityError::NotConverged {
            context: context.to_string(),
            err_estimate: r.err_estimate,
        });
    }
    Ok(r.value)
}

/// Half-space Green's function over the mirror potential:
/// 4 pi times the (1/(2 pi)^2)-normalized transverse Fourier synthesis of
/// the reduced Green's function.
pub fn green_gravity_halfspace(
    r: ScreenPoint3D,
    r_src: ScreenPoint3D,
    ctx: &GravityContext,
    k_max: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexAmplitude, GravityError> {
    ctx.validate()?;
    let result = integrate_kperp_2d(
        |k_y, k_z| {
            let mode = TransverseMode::new(k_y, k_z, ctx);
            match reduced_green_complex(r.x, r_src.x, &mode, ctx) {
                Ok(g) => {
                    let phase = k_y * (r.y - r_src.y) + k_z * (r.z - r_src.z);
                    g * Complex64::new(0.0, phase).exp()
                }
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        },
        k_max,
        spec,
    )
    .map_err(|source| GravityError::Quadrature {
        context: "half-space Green's function".into(),
        source,
    })?;
    require_converged(result, "half-space Green's function")
        .map(|v| 4.0 * std::f64::consts::PI * v)
}

/// Corner (Lloyd mirror + source plane) Green's function: four signed image
/// phase factors under the same transverse integral.
pub fn green_gravity_corner(
    r: ScreenPoint3D,
    r_src: ScreenPoint3D,
    ctx: &GravityContext,
    k_max: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexAmplitude, GravityError> {
    ctx.validate()?;
    let result = integrate_kperp_2d(
        |k_y, k_z| {
            let mode = TransverseMode::new(k_y, k_z, ctx);
            match reduced_green_complex(r.x, r_src.x, &mode, ctx) {
                Ok(g) => {
                    let mut images = Complex64::new(0.0, 0.0);
                    for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        let phase = k_y * (r.y - a * r_src.y) + k_z * (r.z - b * r_src.z);
                        images += a * b * Complex64::new(0.0, phase).exp();
                    }
                    g * images
                }
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        },
        k_max,
        spec,
    )
    .map_err(|source| GravityError::Quadrature {
        context: "corner Green's function".into(),
        source,
    })?;
    require_converged(result, "corner Green's function")
        .map(|v| 4.0 * std::f64::consts::PI * v)
}

/// Interpolation table for the lambda-independent bracket core above the
/// closed-form switch, built once per screen point: sigma depends on k_perp
/// only radially, so one 1D table covers the whole k square.
struct BracketTable {
    lo: f64,
    h: f64,
    values: Vec<f64>,
}

impl BracketTable {
    const NODE_SPACING: f64 = 0.05;

    fn build(lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Self, GravityError> {
        let n = (((hi - lo) / Self::NODE_SPACING).ceil() as usize + 4).max(8);
        let h = (hi - lo) / (n - 1) as f64;
        let values = theta_core_table(lo, hi, n, spec)?;
        Ok(BracketTable { lo, h, values })
    }

    /// Four-point Lagrange cubic on the uniform grid.
    fn eval(&self, s: f64) -> f64 {
        let n = self.values.len();
        let t = (s - self.lo) / self.h;
        let i = (t.floor() as isize).clamp(1, n as isize - 3) as usize;
        let u = t - i as f64; // in [0, 1) away from the clamped edges
        let (m1, p0, p1, p2) = (
            self.values[i - 1],
            self.values[i],
            self.values[i + 1],
            self.values[i + 2],
        );
        let c0 = p0;
        let c1 = p1 - m1 / 3.0 - p0 / 2.0 - p2 / 6.0;
        let c2 = (m1 + p1) / 2.0 - p0;
        let c3 = (p2 - m1) / 6.0 + (p0 - p1) / 2.0;
        c0 + u * (c1 + u * (c2 + u * c3))
    }
}

/// Screen wave function with gravity: the transverse synthesis of slit
/// window factors times the Airy bracket, scaled by -8 C.
///
/// The k_y -> 0 removable point is replaced by its analytic linear limit,
/// and the bracket above the closed-form switch comes from a per-call
/// interpolation table keyed on the radial sigma coordinate.
pub fn psi_gravity(
    p: ScreenPoint3D,
    geometry: &CornerGeometry,
    ctx: &GravityContext,
    k_max: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexAmplitude, GravityError> {
    ctx.validate()?;
    geometry
        .validate()
        .map_err(|e| GravityError::InvalidContext(e.to_string()))?;
    if !(k_max > 0.0) {
        return Err(GravityError::InvalidContext(format!(
            "k_max must be positive, got {k_max}"
        )));
    }
    if (p.z - geometry.screen_z).abs() > 1e-12 * geometry.screen_z.abs() {
        return Err(GravityError::InvalidContext(format!(
            "evaluation point z = {} is off the screen plane z = {}",
            p.z, geometry.screen_z
        )));
    }

    let mode0 = TransverseMode::new(0.0, 0.0, ctx);
    let sigma_base = sigma(p.x, &mode0, ctx);
    let lg2 = ctx.length_lg * ctx.length_lg;
    // Corner of the [-k_max, k_max]^2 square is the largest |k_perp|.
    let sigma_top = sigma_base + 2.0 * lg2 * k_max * k_max;

    let table = if sigma_top > BRACKET_SIGMA_SWITCH {
        let lo = sigma_base.max(BRACKET_SIGMA_SWITCH - 0.5);
        Some(BracketTable::build(lo, sigma_top + 0.1, spec)?)
    } else {
        None
    };

    let bracket_core = |s: f64| -> Result<f64, SpecFunError> {
        match &table {
            Some(t) if s > BRACKET_SIGMA_SWITCH => Ok(t.eval(s)),
            _ => airy_corner_bracket_with(s, Complex64::new(0.0, 0.0), spec).map(|v| v.re),
        }
    };

    let y_sl = geometry.y_sl;
    let half_delta = 0.5 * geometry.delta;
    let ky_eps = 1e-6 / y_sl;

    let result = integrate_kperp_2d(
        |k_y, k_z| {
            let s = sigma_base + lg2 * (k_y * k_y + k_z * k_z);
            let core = match (bracket_core(s), airy_ai(s)) {
                (Ok(c), Ok(ai)) => ctx.lambda * ai + c,
                _ => return Complex64::new(f64::NAN, f64::NAN),
            };
            // (k_z / k_y) sin(k_y y_sl) sin(k_y delta/2), linear limit at k_y = 0
            let window = if k_y.abs() < ky_eps {
                k_z * y_sl * k_y * half_delta
            } else {
                k_z / k_y * (k_y * y_sl).sin() * (k_y * half_delta).sin()
            };
            let phase = k_y * p.y + k_z * p.z;
            core * window * Complex64::new(0.0, phase).exp()
        },
        k_max,
        spec,
    )
    .map_err(|source| GravityError::Quadrature {
        context: format!("screen wave function at (x, y) = ({}, {})", p.x, p.y),
        source,
    })?;

    let value = require_converged(result, "screen wave function")?;
    Ok(-8.0 * ctx.amplitude_c * value)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Internal test units: hbar = 1, m = 1, g = 1/2 makes length_lg = 1.
    fn ctx() -> GravityContext {
        GravityContext::new(1.0, 1.0, 0.5, 2.0)
    }

    fn loose_spec() -> QuadratureSpec {
        QuadratureSpec {
            abs_tol: 1e-8,
            rel_tol: 1e-8,
            ..QuadratureSpec::default()
        }
    }

    #[test]
    fn sigma_is_the_affine_turning_point_coordinate() {
        let c = ctx();
        assert!((c.length_lg - 1.0).abs() < 1e-15);
        let mode = TransverseMode::new(0.0, 0.0, &c);
        // turning point at E / (m g) = 4
        assert_eq!(sigma(4.0, &mode, &c), 0.0);
        assert!((sigma(5.0, &mode, &c) - sigma(4.0, &mode, &c) - 1.0).abs() < 1e-15);
        // transverse kinetic energy lowers e_tilde, raising sigma radially
        let mode2 = TransverseMode::new(0.6, 0.8, &c);
        assert!((sigma(4.0, &mode2, &c) - 1.0).abs() < 1e-12); // (lg k)^2 = 1
    }

    #[test]
    fn length_consistency_enforced() {
        let mut c = ctx();
        c.length_lg = 1.0 + 1e-6;
        assert!(matches!(c.validate(), Err(GravityError::InvalidContext(_))));
    }

    #[test]
    fn reduced_green_continuity_jump_and_reciprocity() {
        let mut c = ctx();
        c.lambda = Complex64::new(0.7, 0.0);
        let mode = TransverseMode::new(0.3, -0.4, &c);
        for &x_src in &[2.0, 3.5, 4.5] {
            // value continuity across the source point
            let eps = 1e-9;
            let left = reduced_green(x_src - eps, x_src, &mode, &c).unwrap();
            let right = reduced_green(x_src + eps, x_src, &mode, &c).unwrap();
            let at = reduced_green(x_src, x_src, &mode, &c).unwrap();
            assert!((left - at).abs() < 1e-8 * at.abs().max(1.0));
            assert!((right - at).abs() < 1e-8 * at.abs().max(1.0));

            // derivative jump of -1 across the source
            let h = 1e-6 * c.length_lg;
            let d_above = (reduced_green(x_src + 2.0 * h, x_src, &mode, &c).unwrap()
                - reduced_green(x_src + h, x_src, &mode, &c).unwrap())
                / h;
            let d_below = (reduced_green(x_src - h, x_src, &mode, &c).unwrap()
                - reduced_green(x_src - 2.0 * h, x_src, &mode, &c).unwrap())
                / h;
            assert!(
                (d_above - d_below + 1.0).abs() < 1e-4,
                "jump at {x_src}: {}",
                d_above - d_below
            );

            // bit-exact reciprocity
            let ab = reduced_green(2.2, x_src, &mode, &c).unwrap();
            let ba = reduced_green(x_src, 2.2, &mode, &c).unwrap();
            assert_eq!(ab.to_bits(), ba.to_bits());
        }
    }

    #[test]
    fn reduced_green_solves_the_airy_ode_off_source() {
        let c = ctx();
        let mode = TransverseMode::new(0.2, 0.5, &c);
        let x_src = 3.0;
        // 4th-order finite-difference second derivative in sigma
        let h = 1e-2;
        for &x in &[1.0, 2.0, 4.0, 5.5] {
            let g = |xx: f64| reduced_green(xx, x_src, &mode, &c).unwrap();
            let d2 = (-g(x + 2.0 * h) + 16.0 * g(x + h) - 30.0 * g(x) + 16.0 * g(x - h)
                - g(x - 2.0 * h))
                / (12.0 * h * h);
            let s = sigma(x, &mode, &c);
            let residual = (d2 - s * g(x)).abs();
            assert!(residual < 1e-5 * (1.0 + g(x).abs()), "x = {x}: {residual}");
        }
    }

    #[test]
    fn cutoff_policy_pushes_ai_below_truncation() {
        let c = ctx();
        let spec = QuadratureSpec::default();
        let k_max = kperp_cutoff(&[3.5, 4.0, 4.5], &c, &spec);
        for &x in &[3.5, 4.0, 4.5] {
            let mode = TransverseMode::new(k_max, 0.0, &c);
            let s = sigma(x, &mode, &c);
            assert!(airy_ai(s).unwrap() < spec.kperp_truncation, "x = {x}");
        }
    }

    #[test]
    fn corner_green_vanishes_on_dirichlet_planes() {
        let c = ctx();
        let spec = loose_spec();
        let k_max = 2.5;
        let r = ScreenPoint3D { x: 4.0, y: 1.0, z: 2.0 };
        for r_src in [
            ScreenPoint3D { x: 3.5, y: 0.0, z: 1.5 },
            ScreenPoint3D { x: 3.5, y: 1.5, z: 0.0 },
        ] {
            let g = green_gravity_corner(r, r_src, &c, k_max, &spec).unwrap();
            assert!(g.norm() < 1e-7, "src {r_src:?}: |G| = {}", g.norm());
        }
    }

    #[test]
    fn corner_equals_signed_halfspace_images() {
        let c = ctx();
        let spec = loose_spec();
        let k_max = 2.5;
        let r = ScreenPoint3D { x: 4.2, y: 0.8, z: 1.1 };
        let r_src = ScreenPoint3D { x: 3.6, y: 0.4, z: 0.7 };
        let corner = green_gravity_corner(r, r_src, &c, k_max, &spec).unwrap();
        let mut images = Complex64::new(0.0, 0.0);
        for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let image_src = ScreenPoint3D {
                x: r_src.x,
                y: a * r_src.y,
                z: b * r_src.z,
            };
            images += a * b * green_gravity_halfspace(r, image_src, &c, k_max, &spec).unwrap();
        }
        assert!(
            (corner - images).norm() < 1e-7 * images.norm().max(1.0),
            "{corner} vs {images}"
        );
    }

    #[test]
    fn halfspace_real_at_coincident_transverse_position() {
        let c = ctx();
        let spec = loose_spec();
        let r = ScreenPoint3D { x: 4.1, y: 0.9, z: 1.3 };
        let r_src = ScreenPoint3D { x: 3.4, y: 0.9, z: 1.3 };
        let g = green_gravity_halfspace(r, r_src, &c, 2.5, &spec).unwrap();
        assert!(g.im.abs() < 1e-7, "Im G = {}", g.im);
    }

    fn test_geometry() -> CornerGeometry {
        CornerGeometry {
            y_sl: 1.0,
            delta: 0.1,
            screen_z: 5.0,
        }
    }

    #[test]
    fn psi_antisymmetric_and_zero_on_mirror() {
        let c = ctx();
        let spec = loose_spec();
        let geom = test_geometry();
        let k_max = kperp_cutoff(&[4.0], &c, &spec);
        let at = |y: f64| {
            psi_gravity(
                ScreenPoint3D { x: 4.0, y, z: geom.screen_z },
                &geom,
                &c,
                k_max,
                &spec,
            )
            .unwrap()
        };
        let on_mirror = at(0.0);
        assert!(on_mirror.norm() < 1e-6, "|psi(0)| = {}", on_mirror.norm());
        let plus = at(1.5);
        let minus = at(-1.5);
        assert!(
            (plus + minus).norm() < 1e-6 * plus.norm().max(1e-3),
            "{plus} vs {minus}"
        );
    }

    #[test]
    fn psi_scales_linearly_in_slit_width() {
        let c = ctx();
        let spec = loose_spec();
        let k_max = kperp_cutoff(&[4.0], &c, &spec);
        let psi_over_delta = |delta: f64| {
            let geom = CornerGeometry {
                delta,
                ..test_geometry()
            };
            psi_gravity(
                ScreenPoint3D { x: 4.0, y: 1.2, z: geom.screen_z },
                &geom,
                &c,
                k_max,
                &spec,
            )
            .unwrap()
                / delta
        };
        let r1 = psi_over_delta(1e-2);
        let r2 = psi_over_delta(1e-3);
        let r3 = psi_over_delta(1e-4);
        assert!((r2 - r1).norm() < 1e-3 * r1.norm());
        assert!((r3 - r2).norm() < 2e-4 * r1.norm());
    }

    #[test]
    fn bracket_table_tracks_direct_evaluation() {
        let spec = QuadratureSpec::default();
        let table = BracketTable::build(3.5, 14.0, &spec).unwrap();
        for &s in &[4.01, 5.3, 7.77, 10.2, 13.6] {
            let direct = airy_corner_bracket_with(s, Complex64::new(0.0, 0.0), &spec)
                .unwrap()
                .re;
            let interp = table.eval(s);
            assert!(
                (interp - direct).abs() < 1e-6 * direct.abs(),
                "sigma = {s}: {interp} vs {direct}"
            );
        }
    }
}
