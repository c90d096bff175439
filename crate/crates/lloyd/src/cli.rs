//! Scenario-driven front end: JSON configuration, SI-to-internal unit
//! conversion, CSV screen scans and the validation report.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 computation
//! failure, 3 validation failure.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use thiserror::Error;

use crate::corner_green::{self, CornerGeometry, FreeBeam, FreeMethod};
use crate::gravity_green::{self, GravityContext, ScreenPoint3D};
use crate::oracles::{run_validation_suite, ValidationLevel};
use crate::quadrature::QuadratureSpec;

/// 2018 CODATA reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054571817e-34;
/// 2018 CODATA neutron mass, kg.
pub const NEUTRON_MASS_SI: f64 = 1.67492749804e-27;
/// Standard gravitational acceleration, m/s^2.
pub const STANDARD_GRAVITY_SI: f64 = 9.80665;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read scenario {path}: {source}")]
    ScenarioRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("computation failed: {0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ScenarioRead { .. } | CliError::Config(_) => 1,
            CliError::Io { .. } | CliError::Computation(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    FreeExact,
    FreeAsymptotic,
    Gravity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize)]
pub enum Units {
    #[serde(rename = "SI")]
    Si,
    #[serde(rename = "internal")]
    Internal,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct BeamInput {
    k: f64,
    #[serde(default = "one")]
    amplitude_re: f64,
    #[serde(default)]
    amplitude_im: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct GravityInput {
    /// Defaults: CODATA hbar in SI scenarios, 1 in internal ones.
    hbar: Option<f64>,
    /// Defaults: neutron mass in SI scenarios, 1 in internal ones.
    mass_m: Option<f64>,
    /// Defaults: standard gravity in SI scenarios, 1/2 in internal ones
    /// (which makes the gravitational length exactly 1).
    accel_g: Option<f64>,
    energy_e: f64,
    #[serde(default)]
    lambda_re: f64,
    #[serde(default)]
    lambda_im: f64,
    #[serde(default = "one")]
    amplitude_re: f64,
    #[serde(default)]
    amplitude_im: f64,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct GridInput {
    y_min: f64,
    y_max: f64,
    n_points: usize,
    x_min: Option<f64>,
    x_max: Option<f64>,
    n_x: Option<usize>,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    mode: Mode,
    geometry: CornerGeometry,
    beam: Option<BeamInput>,
    gravity: Option<GravityInput>,
    screen_grid: GridInput,
    #[serde(default)]
    quadrature: QuadratureSpec,
    units: Units,
}

/// A validated scenario, converted to internal dimensionless units.
/// `coord_scale` converts internal coordinates back to the input units for
/// reporting (free modes: 1/k; gravity: the gravitational length).
#[derive(Debug)]
pub struct Scenario {
    pub mode: Mode,
    pub geometry: CornerGeometry,
    pub beam: Option<FreeBeam>,
    pub gravity: Option<GravityContext>,
    pub y_grid: Vec<f64>,
    pub x_grid: Vec<f64>,
    pub coord_scale: f64,
    pub quadrature: QuadratureSpec,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn scale_geometry(g: &CornerGeometry, factor: f64) -> CornerGeometry {
    CornerGeometry {
        y_sl: g.y_sl * factor,
        delta: g.delta * factor,
        screen_z: g.screen_z * factor,
    }
}

/// Read and fully validate a scenario file, converting to internal units.
pub fn parse_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ScenarioRead {
        path: path.to_path_buf(),
        source,
    })?;
    let file: ScenarioFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    build_scenario(file)
}

fn build_scenario(file: ScenarioFile) -> Result<Scenario, CliError> {
    let grid = &file.screen_grid;
    if !(grid.y_min < grid.y_max) {
        return Err(CliError::Config(
            "screen_grid: y_min must be less than y_max".into(),
        ));
    }
    if grid.n_points < 2 {
        return Err(CliError::Config(
            "screen_grid.n_points: at least 2 points required".into(),
        ));
    }
    file.quadrature
        .validate()
        .map_err(|e| CliError::Config(format!("quadrature: {e}")))?;

    let is_free = matches!(file.mode, Mode::FreeExact | Mode::FreeAsymptotic);
    if is_free {
        if file.beam.is_none() {
            return Err(CliError::Config(
                "free mode selected but the beam block is missing".into(),
            ));
        }
        if file.gravity.is_some() {
            return Err(CliError::Config(
                "free mode selected but a gravity block is present".into(),
            ));
        }
        if grid.x_min.is_some() || grid.x_max.is_some() || grid.n_x.is_some() {
            return Err(CliError::Config(
                "screen_grid: x_min/x_max/n_x apply only to gravity mode".into(),
            ));
        }
    } else {
        if file.gravity.is_none() {
            return Err(CliError::Config(
                "gravity mode selected but the gravity block is missing".into(),
            ));
        }
        if file.beam.is_some() {
            return Err(CliError::Config(
                "gravity mode selected but a beam block is present".into(),
            ));
        }
    }

    if is_free {
        let beam_in = file.beam.as_ref().unwrap();
        if !(beam_in.k > 0.0) {
            return Err(CliError::Config("beam.k: wave number must be positive".into()));
        }
        // Internal units scale all lengths by k, so the internal wave
        // number is exactly 1; internal inputs are taken as-is.
        let (factor, coord_scale, k_int) = match file.units {
            Units::Si => (beam_in.k, 1.0 / beam_in.k, 1.0),
            Units::Internal => (1.0, 1.0, beam_in.k),
        };
        let geometry = scale_geometry(&file.geometry, factor);
        geometry
            .validate()
            .map_err(|e| CliError::Config(format!("geometry: {e}")))?;
        let beam = FreeBeam {
            k: k_int,
            amplitude_c: Complex64::new(beam_in.amplitude_re, beam_in.amplitude_im),
        };
        beam.validate()
            .map_err(|e| CliError::Config(format!("beam: {e}")))?;
        Ok(Scenario {
            mode: file.mode,
            geometry,
            beam: Some(beam),
            gravity: None,
            y_grid: linspace(grid.y_min * factor, grid.y_max * factor, grid.n_points),
            x_grid: Vec::new(),
            coord_scale,
            quadrature: file.quadrature,
        })
    } else {
        let (x_min, x_max, n_x) = match (grid.x_min, grid.x_max, grid.n_x) {
            (Some(a), Some(b), Some(n)) if n >= 1 && a <= b => (a, b, n),
            (Some(_), Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "screen_grid: need x_min <= x_max and n_x >= 1".into(),
                ))
            }
            _ => {
                return Err(CliError::Config(
                    "gravity mode needs screen_grid.x_min, x_max and n_x".into(),
                ))
            }
        };
        let g_in = file.gravity.as_ref().unwrap();
        let si = matches!(file.units, Units::Si);
        let hbar = g_in.hbar.unwrap_or(if si { HBAR_SI } else { 1.0 });
        let mass = g_in.mass_m.unwrap_or(if si { NEUTRON_MASS_SI } else { 1.0 });
        let accel = g_in
            .accel_g
            .unwrap_or(if si { STANDARD_GRAVITY_SI } else { 0.5 });
        if !(hbar > 0.0 && mass > 0.0 && accel > 0.0) {
            return Err(CliError::Config(
                "gravity: hbar, mass_m and accel_g must be positive".into(),
            ));
        }
        let lambda = Complex64::new(g_in.lambda_re, g_in.lambda_im);
        let amplitude = Complex64::new(g_in.amplitude_re, g_in.amplitude_im);

        // Internal units: lengths in gravitational lengths, energies in
        // m g l_g; the internal context (hbar, m, g) = (sqrt 2, 1, 1) keeps
        // both scale factors at exactly 1.
        let (ctx, factor, coord_scale) = match file.units {
            Units::Si => {
                let l_g = (hbar * hbar / (2.0 * mass * mass * accel)).cbrt();
                let energy_unit = mass * accel * l_g;
                let mut ctx =
                    GravityContext::new(std::f64::consts::SQRT_2, 1.0, 1.0, g_in.energy_e / energy_unit);
                ctx.lambda = lambda;
                ctx.amplitude_c = amplitude;
                (ctx, 1.0 / l_g, l_g)
            }
            Units::Internal => {
                let mut ctx = GravityContext::new(hbar, mass, accel, g_in.energy_e);
                ctx.lambda = lambda;
                ctx.amplitude_c = amplitude;
                (ctx, 1.0, 1.0)
            }
        };
        ctx.validate()
            .map_err(|e| CliError::Config(format!("gravity: {e}")))?;
        let geometry = scale_geometry(&file.geometry, factor);
        geometry
            .validate()
            .map_err(|e| CliError::Config(format!("geometry: {e}")))?;
        Ok(Scenario {
            mode: file.mode,
            geometry,
            beam: None,
            gravity: Some(ctx),
            y_grid: linspace(grid.y_min * factor, grid.y_max * factor, grid.n_points),
            x_grid: linspace(x_min * factor, x_max * factor, n_x),
            coord_scale,
            quadrature: file.quadrature,
        })
    }
}

/// Result of a scan run: rows written and the warnings gathered per point.
#[derive(Debug)]
pub struct ScanSummary {
    pub rows: usize,
    pub warnings: Vec<String>,
}

fn sanitize_flag(token: &str) -> String {
    token
        .chars()
        .map(|c| if c == ',' || c == '\n' { ' ' } else { c })
        .collect()
}

fn write_row(
    out: &mut impl std::io::Write,
    coords: &[f64],
    psi: Complex64,
    flags: &[String],
) -> std::io::Result<()> {
    for c in coords {
        write!(out, "{c:.16e},")?;
    }
    if psi.re.is_finite() && psi.im.is_finite() {
        write!(out, "{:.16e},{:.16e},{:.16e}", psi.re, psi.im, psi.norm_sqr())?;
    } else {
        // failed point: empty value cells, the flag column explains
        write!(out, ",,")?;
    }
    let joined = flags
        .iter()
        .map(|f| sanitize_flag(f))
        .collect::<Vec<_>>()
        .join(";");
    writeln!(out, ",{joined}")
}

/// Run the scenario and write the CSV scan to `out`.
pub fn run_scan(scenario: &Scenario, out: &Path) -> Result<ScanSummary, CliError> {
    let file = std::fs::File::create(out).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let mut writer = std::io::BufWriter::new(file);
    let io_err = |source: std::io::Error| CliError::Io {
        path: out.to_path_buf(),
        source,
    };
    let mut warnings = Vec::new();
    let rows;

    match scenario.mode {
        Mode::FreeExact | Mode::FreeAsymptotic => {
            let method = if scenario.mode == Mode::FreeExact {
                FreeMethod::Exact
            } else {
                FreeMethod::Asymptotic
            };
            let beam = scenario.beam.as_ref().expect("validated free scenario");
            let points = corner_green::scan_screen_free(
                &scenario.geometry,
                beam,
                &scenario.y_grid,
                method,
                &scenario.quadrature,
            )
            .map_err(|e| CliError::Computation(e.to_string()))?;
            writeln!(writer, "y,re_psi,im_psi,intensity,flags").map_err(io_err)?;
            for p in &points {
                write_row(&mut writer, &[p.y * scenario.coord_scale], p.psi, &p.flags)
                    .map_err(io_err)?;
                for f in &p.flags {
                    warnings.push(format!("y = {}: {f}", p.y * scenario.coord_scale));
                }
            }
            rows = points.len();
        }
        Mode::Gravity => {
            let ctx = scenario.gravity.as_ref().expect("validated gravity scenario");
            let k_max = gravity_green::kperp_cutoff(&scenario.x_grid, ctx, &scenario.quadrature);
            writeln!(writer, "x,y,re_psi,im_psi,intensity,flags").map_err(io_err)?;
            let mut count = 0usize;
            for &x in &scenario.x_grid {
                for &y in &scenario.y_grid {
                    let point = ScreenPoint3D {
                        x,
                        y,
                        z: scenario.geometry.screen_z,
                    };
                    let coords = [x * scenario.coord_scale, y * scenario.coord_scale];
                    match gravity_green::psi_gravity(
                        point,
                        &scenario.geometry,
                        ctx,
                        k_max,
                        &scenario.quadrature,
                    ) {
                        Ok(psi) => {
                            write_row(&mut writer, &coords, psi, &[]).map_err(io_err)?;
                        }
                        Err(e) => {
                            let flags = vec!["computation-error".to_string()];
                            write_row(
                                &mut writer,
                                &coords,
                                Complex64::new(f64::NAN, f64::NAN),
                                &flags,
                            )
                            .map_err(io_err)?;
                            warnings.push(format!(
                                "(x, y) = ({}, {}): {e}",
                                coords[0], coords[1]
                            ));
                        }
                    }
                    count += 1;
                }
            }
            rows = count;
        }
    }
    writer.flush().map_err(io_err)?;
    Ok(ScanSummary { rows, warnings })
}

/// Run the validation suite, writing `check_name,measured,bound,passed`
/// lines to `out` (standard output when `None`). Returns true iff all
/// checks passed.
pub fn run_validate(level: ValidationLevel, out: Option<&Path>) -> Result<bool, CliError> {
    let reports = run_validation_suite(level);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!(
            "{},{:.16e},{:.16e},{}\n",
            r.check_name, r.measured, r.bound, r.passed
        ));
    }
    match out {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(reports.iter().all(|r| r.passed))
}

#[derive(Debug, Parser)]
#[command(
    name = "lloyd",
    about = "Screen scans and validation for a corner-mirror neutron interferometer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a screen scan described by a scenario file and write CSV.
    Scan {
        /// Scenario configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Override the real part of the gravity-mode lambda constant
        /// (internal units).
        #[arg(long)]
        lambda_re: Option<f64>,
        /// Override the imaginary part of the gravity-mode lambda constant
        /// (internal units).
        #[arg(long)]
        lambda_im: Option<f64>,
    },
    /// Run the validation suite and report one line per check.
    Validate {
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with success status
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Scan {
            config,
            out,
            lambda_re,
            lambda_im,
        } => {
            let mut scenario = match parse_scenario(&config) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("lloyd: {e}");
                    return e.exit_code();
                }
            };
            if lambda_re.is_some() || lambda_im.is_some() {
                match scenario.gravity.as_mut() {
                    Some(ctx) => {
                        if let Some(re) = lambda_re {
                            ctx.lambda.re = re;
                        }
                        if let Some(im) = lambda_im {
                            ctx.lambda.im = im;
                        }
                    }
                    None => {
                        eprintln!("lloyd: --lambda-re/--lambda-im apply only to gravity mode");
                        return 1;
                    }
                }
            }
            match run_scan(&scenario, &out) {
                Ok(summary) => {
                    println!("wrote {} rows to {}", summary.rows, out.display());
                    for w in &summary.warnings {
                        eprintln!("warning: {w}");
                    }
                    0
                }
                Err(e) => {
                    eprintln!("lloyd: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Validate { level, out } => {
            let level = match level {
                LevelArg::Fast => ValidationLevel::Fast,
                LevelArg::Full => ValidationLevel::Full,
            };
            match run_validate(level, out.as_deref()) {
                Ok(true) => 0,
                Ok(false) => 3,
                Err(e) => {
                    eprintln!("lloyd: {e}");
                    e.exit_code()
                }
            }
        }
    }
}
