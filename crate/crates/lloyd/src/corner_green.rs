//! Field-free Lloyd interferometer with corner geometry: the mirror-charge
//! Green's function, the exact slit-integrated wave function in its Hankel
//! form, and the far-field narrow-slit closed form.
//!
//! All lengths are internal dimensionless units (scaled so that typical
//! wave numbers are O(1)); the CLI converts physical inputs.

use num_complex::Complex64;
use thiserror::Error;

use crate::quadrature::{integrate_adaptive, QuadratureError, QuadratureSpec};
use crate::specfun::{hankel1, ComplexAmplitude, SpecFunError};

/// Phase arguments k * R beyond this are flagged: double precision no longer
/// resolves the oscillation reliably.
pub const PHASE_VALIDITY_BOUND: f64 = 1e7;

/// Slit and screen layout. The mirror is the plane y = 0, the source plane
/// is z = 0, and the slit spans [y_sl - delta/2, y_sl + delta/2] at z = 0.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CornerGeometry {
    pub y_sl: f64,
    pub delta: f64,
    pub screen_z: f64,
}

impl CornerGeometry {
    pub fn validate(&self) -> Result<(), CornerError> {
        if !(self.y_sl > 0.0 && self.delta > 0.0 && self.screen_z > 0.0) {
            return Err(CornerError::InvalidGeometry(
                "y_sl, delta and screen_z must be positive".into(),
            ));
        }
        if self.y_sl - 0.5 * self.delta <= 0.0 {
            return Err(CornerError::InvalidGeometry(
                "slit entirely above the mirror plane requires y_sl - delta/2 > 0".into(),
            ));
        }
        Ok(())
    }
}

/// Monochromatic beam entering the slit: psi = C e^{i k z} on the slit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeBeam {
    pub k: f64,
    pub amplitude_c: ComplexAmplitude,
}

impl FreeBeam {
    pub fn new(k: f64) -> Self {
        FreeBeam {
            k,
            amplitude_c: Complex64::new(1.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<(), CornerError> {
        if !(self.k > 0.0) {
            return Err(CornerError::InvalidGeometry("wave number k must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CornerError {
    #[error("invalid configuration: {0}")]
    InvalidGeometry(String),
    #[error("field point coincides with a source or image point (distance {distance:.3e})")]
    Singularity { distance: f64 },
    #[error("quadrature failed for screen point {context}: {source}")]
    Quadrature {
        context: String,
        #[source]
        source: QuadratureError,
    },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Mirror-charge corner Green's function: the four signed image terms
/// sum_{a,b = +-} a b e^{i k R_ab} / R_ab.
pub fn green_corner(
    r: [f64; 3],
    r_src: [f64; 3],
    k: f64,
) -> Result<ComplexAmplitude, CornerError> {
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let dx = r[0] - r_src[0];
        let dy = r[1] - a * r_src[1];
        let dz = r[2] - b * r_src[2];
        let dist = (dx * dx + dy * dy + dz * dz).sqrt();
        if dist < 1e-300 {
            return Err(CornerError::Singularity { distance: dist });
        }
        let sign = a * b;
        total += sign * Complex64::new(0.0, k * dist).exp() / dist;
    }
    Ok(total)
}

/// Whether phases at this screen point stay within the documented
/// double-precision validity bound.
pub fn phase_within_bound(y: f64, geometry: &CornerGeometry, beam: &FreeBeam) -> bool {
    let reach = (y.abs() + geometry.y_sl + geometry.delta).hypot(geometry.screen_z);
    beam.k * reach <= PHASE_VALIDITY_BOUND
}

/// Integral of H1(k sqrt(y'^2 + z^2)) / sqrt(y'^2 + z^2) over a window.
fn hankel_window(
    a: f64,
    b: f64,
    k: f64,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64, CornerError> {
    let result = integrate_adaptive(
        |yp| {
            let rho = (yp * yp + z * z).sqrt();
            match hankel1(1, k * rho) {
                Ok(h) => h / rho,
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        },
        a,
        b,
        spec,
    )
    .map_err(|source| CornerError::Quadrature {
        context: format!("Hankel window [{a}, {b}]"),
        source,
    })?;
    if !result.converged {
        return Err(CornerError::Quadrature {
            context: format!("Hankel window [{a}, {b}]"),
            source: QuadratureError::InvalidSpec(format!(
                "did not converge (err {:.3e})",
                result.err_estimate
            )),
        });
    }
    Ok(result.value)
}

/// Exact screen wave function: C (i k z / 2) times the difference of the two
/// shifted Hankel window integrals. Exact up to quadrature tolerance.
pub fn psi_exact(
    y: f64,
    geometry: &CornerGeometry,
    beam: &FreeBeam,
    spec: &QuadratureSpec,
) -> Result<ComplexAmplitude, CornerError> {
    geometry.validate()?;
    beam.validate()?;
    let (k, z) = (beam.k, geometry.screen_z);
    let half = 0.5 * geometry.delta;
    let lo = geometry.y_sl - half;
    let hi = geometry.y_sl + half;
    if y == 0.0 {
        // Windows coincide; the difference vanishes identically.
        return Ok(Complex64::new(0.0, 0.0));
    }
    let direct = hankel_window(lo - y, hi - y, k, z, spec)?;
    let mirrored = hankel_window(lo + y, hi + y, k, z, spec)?;
    let prefactor = beam.amplitude_c * Complex64::new(0.0, 0.5 * k * z);
    Ok(prefactor * (direct - mirrored))
}

/// Far-field narrow-slit closed form (large z, small delta).
pub fn psi_asymptotic(
    y: f64,
    geometry: &CornerGeometry,
    beam: &FreeBeam,
) -> Result<ComplexAmplitude, CornerError> {
    geometry.validate()?;
    beam.validate()?;
    let (k, z) = (beam.k, geometry.screen_z);
    let term = |offset: f64| -> Complex64 {
        let r2 = offset * offset + z * z;
        Complex64::new(0.0, k * r2.sqrt()).exp() / r2.powf(0.75)
    };
    let prefactor = geometry.delta
        * beam.amplitude_c
        * z
        * (k / (2.0 * std::f64::consts::PI)).sqrt()
        * Complex64::new(0.0, -std::f64::consts::FRAC_PI_4).exp();
    Ok(prefactor * (term(geometry.y_sl - y) - term(geometry.y_sl + y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreeMethod {
    Exact,
    Asymptotic,
}

/// One evaluated screen point; failures and validity warnings are carried in
/// `flags` with NaN values, so a scan never aborts half-way.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub y: f64,
    pub psi: ComplexAmplitude,
    pub intensity: f64,
    pub flags: Vec<String>,
}

/// Evaluate the screen wave function on a grid, preserving grid order.
pub fn scan_screen_free(
    geometry: &CornerGeometry,
    beam: &FreeBeam,
    y_grid: &[f64],
    method: FreeMethod,
    spec: &QuadratureSpec,
) -> Result<Vec<ScanPoint>, CornerError> {
    geometry.validate()?;
    beam.validate()?;
    let mut points = Vec::with_capacity(y_grid.len());
    for (index, &y) in y_grid.iter().enumerate() {
        let mut flags = Vec::new();
        if !phase_within_bound(y, geometry, beam) {
            flags.push("phase-accuracy".to_string());
        }
        let psi = match method {
            FreeMethod::Exact => psi_exact(y, geometry, beam, spec),
            FreeMethod::Asymptotic => psi_asymptotic(y, geometry, beam),
        };
        let psi = match psi {
            Ok(v) => v,
            Err(e) => {
                flags.push(format!("error[point {index}]: {e}"));
                Complex64::new(f64::NAN, f64::NAN)
            }
        };
        points.push(ScanPoint {
            y,
            psi,
            intensity: psi.norm_sqr(),
            flags,
        });
    }
    Ok(points)
}
