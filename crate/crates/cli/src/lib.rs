//! `casimir` command-line front end.
//!
//! ```text
//! casimir <force|sweep|spectrum|theta|check> --config PATH [options]
//! ```
//!
//! Exit codes: 0 success, 2 configuration or I/O error, 3 numerical
//! failure, 4 a proven bound was violated (or `check` found a non-passive
//! mirror).

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use casimir_core::config::{GridSpec, OutputFormat, ParseOptions, RunConfig};
use casimir_core::spectral::DispersionSpec;
use casimir_core::{
    find_resonances, force_imag, fresnel_scale, parse_config_with, spectrum, sweep_force,
    theta_dispersion, theta_static, CasimirError, ConfigError, MirrorStack,
};
use clap::{Parser, ValueEnum};

use report::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Config = 2,
    Numeric = 3,
    Bound = 4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Force at the configured τ, with the perfect-mirror ratio and bound flags.
    Force,
    /// Force over a τ grid.
    Sweep,
    /// Airy function, loop function and spectral density over an ω grid.
    Spectrum,
    /// Static and dispersion-integral θ of each mirror.
    Theta,
    /// Passivity report for both mirrors.
    Check,
}

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Casimir force between frequency-dependent mirrors")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON run configuration.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Relative quadrature tolerance (overrides the config file).
    #[arg(long, env = "CASIMIR_TOL", value_name = "X")]
    pub tol: Option<f64>,
    #[arg(long, value_name = "A")]
    pub tau_min: Option<f64>,
    #[arg(long, value_name = "B")]
    pub tau_max: Option<f64>,
    #[arg(long, value_name = "N")]
    pub tau_steps: Option<usize>,
    /// Space the τ grid logarithmically.
    #[arg(long)]
    pub log: bool,
    #[arg(long, value_name = "A")]
    pub omega_min: Option<f64>,
    #[arg(long, value_name = "B")]
    pub omega_max: Option<f64>,
    #[arg(long, value_name = "N")]
    pub omega_steps: Option<usize>,
    /// text, csv or structured (JSON).
    #[arg(long, value_parser = clap::value_parser!(OutputFormat))]
    pub format: Option<OutputFormat>,
    /// Write results here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Fresnel number for the qualitative three-dimensional estimate.
    #[arg(long, value_name = "N")]
    pub fresnel: Option<f64>,
}

struct Failure {
    exit: Exit,
    message: String,
}

fn config_failure(message: impl Into<String>) -> Failure {
    Failure {
        exit: Exit::Config,
        message: message.into(),
    }
}

fn numeric_failure(e: &CasimirError) -> Failure {
    let exit = match e {
        CasimirError::Unsupported(_) | CasimirError::InvalidModel(_) | CasimirError::Domain(_) => {
            Exit::Config
        }
        _ => Exit::Numeric,
    };
    Failure {
        exit,
        message: e.to_string(),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return e.exit_code();
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code as i32,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.exit as i32
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Exit, Failure> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| config_failure(format!("cannot read {}: {e}", cli.config.display())))?;
    let options = ParseOptions {
        passivity_screen: cli.command != Command::Check,
    };
    let mut config = parse_config_with(&text, options).map_err(|e| {
        let hint = match e {
            ConfigError::Passivity { .. } => " (run `casimir check` for the full report)",
            _ => "",
        };
        config_failure(format!("{}: {e}{hint}", cli.config.display()))
    })?;
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(config_failure(format!("--tol must be positive, got {tol}")));
        }
        config.quadrature.rel_tol = tol;
    }
    if let Some(n) = cli.fresnel {
        if !(n > 0.0 && n.is_finite()) {
            return Err(config_failure(format!("--fresnel must be positive, got {n}")));
        }
        config.fresnel_number = Some(n);
    }

    let format = cli.format.or(config.output.format).unwrap_or(match cli.command {
        Command::Sweep | Command::Spectrum => OutputFormat::Csv,
        _ => OutputFormat::Text,
    });
    let (bytes, status) = match cli.command {
        Command::Force => force(&config, format)?,
        Command::Sweep => sweep(cli, &config, format)?,
        Command::Spectrum => spectral(cli, &config, format, stderr)?,
        Command::Theta => theta(&config, format)?,
        Command::Check => check(&config, format),
    };

    match cli.out.as_ref().or(config.output.path.as_ref()) {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| config_failure(format!("cannot write {}: {e}", path.display())))?,
        None => stdout
            .write_all(&bytes)
            .map_err(|e| config_failure(format!("cannot write to stdout: {e}")))?,
    }
    if status == Exit::Bound {
        let _ = writeln!(stderr, "error: bound violated; see output");
    }
    Ok(status)
}

fn merge_grid(
    name: &str,
    base: Option<GridSpec>,
    min: Option<f64>,
    max: Option<f64>,
    steps: Option<usize>,
    log: bool,
) -> Result<Vec<f64>, Failure> {
    let grid = match (base, min, max, steps) {
        (Some(g), ..) => GridSpec {
            min: min.unwrap_or(g.min),
            max: max.unwrap_or(g.max),
            steps: steps.unwrap_or(g.steps),
            log: g.log || log,
        },
        (None, Some(min), Some(max), Some(steps)) => GridSpec { min, max, steps, log },
        _ => {
            return Err(config_failure(format!(
                "no {name} grid: give --{name}-min, --{name}-max and --{name}-steps or set {name}_grid in the config"
            )))
        }
    };
    grid.validate()
        .map_err(|m| config_failure(format!("{name} grid: {m}")))?;
    Ok(grid.points())
}

fn force(config: &RunConfig, format: OutputFormat) -> Result<(Vec<u8>, Exit), Failure> {
    let units = config.cavity.units;
    let result = force_imag(&config.cavity, &config.quadrature).map_err(|e| numeric_failure(&e))?;
    let record = ForceRecord::new(&result, &units);
    let fresnel = match config.fresnel_number {
        Some(n) => Some(FresnelRecord::new(
            &fresnel_scale(result.force, n).map_err(|e| numeric_failure(&e))?,
            &units,
        )),
        None => None,
    };
    let bytes = match format {
        OutputFormat::Text => force_text(&record, fresnel.as_ref(), &units),
        OutputFormat::Csv => force_csv(&record, fresnel.as_ref()),
        OutputFormat::Structured => force_structured(&record, fresnel.as_ref(), &units),
    };
    let status = if result.bounds.violated() { Exit::Bound } else { Exit::Ok };
    Ok((bytes, status))
}

fn sweep(cli: &Cli, config: &RunConfig, format: OutputFormat) -> Result<(Vec<u8>, Exit), Failure> {
    let grid = merge_grid("tau", config.tau_grid, cli.tau_min, cli.tau_max, cli.tau_steps, cli.log)?;
    let result = sweep_force(&config.cavity, &grid, &config.quadrature).map_err(|e| numeric_failure(&e))?;
    let units = config.cavity.units;
    let rows = sweep_rows(&result, &units, config.fresnel_number);
    let bytes = match format {
        OutputFormat::Text => sweep_text(&rows, &units),
        OutputFormat::Csv => sweep_csv(&rows, config.fresnel_number.is_some()),
        OutputFormat::Structured => sweep_structured(&rows, result.non_increasing, &units),
    };
    let monotonicity_broken = config.cavity.is_dielectric_pair() && !result.non_increasing;
    let status = if result.any_bound_violated() || monotonicity_broken {
        Exit::Bound
    } else if result.any_error() {
        Exit::Numeric
    } else {
        Exit::Ok
    };
    Ok((bytes, status))
}

fn spectral(
    cli: &Cli,
    config: &RunConfig,
    format: OutputFormat,
    stderr: &mut dyn Write,
) -> Result<(Vec<u8>, Exit), Failure> {
    let grid = merge_grid(
        "omega",
        config.omega_grid,
        cli.omega_min,
        cli.omega_max,
        cli.omega_steps,
        false,
    )?;
    for m in [&config.cavity.mirror1, &config.cavity.mirror2] {
        if !m.supports_real_axis() {
            return Err(config_failure("spectrum needs mirrors with a real-frequency model"));
        }
    }
    let units = config.cavity.units;
    let points = spectrum(&config.cavity, &grid).map_err(|e| numeric_failure(&e))?;
    let rows = spectrum_rows(&points, &units);
    for r in rows.iter().filter(|r| r.error.is_some()) {
        let _ = writeln!(stderr, "omega {}: {}", sci(r.omega), r.error.as_deref().unwrap_or(""));
    }
    let bytes = match format {
        OutputFormat::Text => {
            // Resonances need a grid finer than a twentieth of π/τ; a
            // coarser grid simply lists none.
            let (lo, hi) = (grid[0], grid[grid.len() - 1]);
            let resonances = if grid.len() >= 3 {
                find_resonances(&config.cavity, lo, hi, grid.len()).unwrap_or_default()
            } else {
                Vec::new()
            };
            spectrum_text(&rows, &resonances, &units)
        }
        OutputFormat::Csv => spectrum_csv(&rows),
        OutputFormat::Structured => spectrum_structured(&rows, &units),
    };
    let status = if rows.iter().any(|r| r.error.is_some()) { Exit::Numeric } else { Exit::Ok };
    Ok((bytes, status))
}

fn theta_row(name: &'static str, stack: &MirrorStack, units: &casimir_core::Units) -> Result<ThetaRow, Failure> {
    let mut notes = Vec::new();
    let mut value = |r: casimir_core::Result<f64>| -> Result<Option<f64>, Failure> {
        match r {
            Ok(v) => Ok(Some(units.time(v))),
            Err(CasimirError::Unsupported(m)) => {
                notes.push(m);
                Ok(None)
            }
            Err(e) => Err(numeric_failure(&e)),
        }
    };
    let theta_static = value(theta_static(stack))?;
    let theta_dispersion = value(theta_dispersion(stack, &DispersionSpec::default()))?;
    Ok(ThetaRow {
        mirror: name,
        theta_static,
        theta_dispersion,
        notes,
    })
}

fn theta(config: &RunConfig, format: OutputFormat) -> Result<(Vec<u8>, Exit), Failure> {
    let units = config.cavity.units;
    let rows = vec![
        theta_row("mirror1", &config.cavity.mirror1, &units)?,
        theta_row("mirror2", &config.cavity.mirror2, &units)?,
    ];
    let bytes = match format {
        OutputFormat::Text => theta_text(&rows, &units),
        OutputFormat::Csv => theta_csv(&rows),
        OutputFormat::Structured => theta_structured(&rows, &units),
    };
    Ok((bytes, Exit::Ok))
}

fn check(config: &RunConfig, format: OutputFormat) -> (Vec<u8>, Exit) {
    let grid = casimir_core::scattering::default_passivity_grid();
    let record = CheckRecord::new(&config.cavity.check_passivity(&grid));
    let bytes = match format {
        OutputFormat::Text => check_text(&record),
        OutputFormat::Csv => check_csv(&record),
        OutputFormat::Structured => check_structured(&record),
    };
    (bytes, if record.passed { Exit::Ok } else { Exit::Bound })
}
