//! Command-line front end. Exit codes: 0 success, 1 configuration or usage
//! error, 2 solver failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::dispersion;
use crate::error::Error;
use crate::susceptibility;

use super::config::{ConfigError, Format, RunConfig};
use super::output::{self, Table};
use super::sweep;

#[derive(Debug, Parser)]
#[command(
    name = "stoplight",
    version,
    about = "Group velocity and stopped light in a Doppler-broadened Λ medium"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Doppler-averaged χ and ∂χ/∂ω₁ over the Δ₁ grid
    Spectrum(Common),
    /// Group velocity at the configured point
    Groupvel(Common),
    /// Group velocity across the configured sweep
    Sweep(Common),
    /// Numerator 1 + 2πk₁⟨v ∂χ/∂ω₁⟩ over the Δ₁ grid
    Numerator(Common),
    /// Ω at which Re[numerator] vanishes
    FindStop {
        #[command(flatten)]
        common: Common,
        /// Search bracket in units of γ
        #[arg(long, value_name = "LO,HI")]
        bracket: Option<String>,
    },
    /// Print the resolved configuration and derived constants
    Params {
        #[command(flatten)]
        common: Common,
        /// Print only configuration text that can be read back with --config
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Override one configuration key (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// Velocity quadrature nodes
    #[arg(long)]
    nodes: Option<usize>,
    /// Initial finite-difference step in units of γ
    #[arg(long = "fd-step")]
    fd_step: Option<f64>,
}

#[derive(Debug)]
enum CliError {
    Config(ConfigError),
    Solver(Error),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(Error::InvalidParameter { .. }) => 1,
            CliError::Solver(_) => 2,
            CliError::Config(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "configuration error: {e}"),
            CliError::Solver(e) => write!(f, "solver error: {e}"),
            CliError::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Solver(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Runs the command line against the process stdout/stderr.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "stoplight: {e}");
            e.exit_code()
        }
    }
}

fn load(common: &Common) -> Result<RunConfig, ConfigError> {
    let mut config = match &common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    for assignment in &common.set {
        config.apply_override(assignment)?;
    }
    if let Some(nodes) = common.nodes {
        config.quad.nodes = nodes;
    }
    if let Some(step) = common.fd_step {
        config.fd_step = step;
    }
    if let Some(path) = &common.output {
        config.output.path = Some(path.clone());
    }
    if let Some(text) = &common.format {
        config.output.format =
            Some(
                Format::parse(text).ok_or_else(|| ConfigError::InvalidValue {
                    key: "--format".into(),
                    reason: format!("expected csv or json, got `{text}`"),
                })?,
            );
    }
    config.validate()?;
    Ok(config)
}

fn parse_bracket(text: &str) -> Result<(f64, f64), ConfigError> {
    let bad = || ConfigError::InvalidValue {
        key: "--bracket".into(),
        reason: format!("expected LO,HI with LO < HI, got `{text}`"),
    };
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo < hi) {
        return Err(bad());
    }
    Ok((lo, hi))
}

enum Shape {
    Rows,
    Object,
}

fn emit(
    config: &RunConfig,
    table: &Table,
    default: Format,
    shape: Shape,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let format = config.output.format.unwrap_or(default);
    let mut buf = Vec::new();
    match (format, shape) {
        (Format::Json, Shape::Object) => table.write_json_object(&mut buf)?,
        (format, _) => table.write(format, &mut buf)?,
    }
    match &config.output.path {
        Some(path) => std::fs::write(path, buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Spectrum(common) => {
            let config = load(&common)?;
            let params = config.params()?;
            let grid: Vec<f64> = config
                .grid
                .values()
                .iter()
                .map(|d| d * params.gamma)
                .collect();
            let points = susceptibility::spectrum(&params, &grid, &config.quad, config.step())?;
            emit(
                &config,
                &output::spectrum_table(&points, params.gamma),
                Format::Csv,
                Shape::Rows,
                out,
            )
        }
        Command::Groupvel(common) => {
            let config = load(&common)?;
            let params = config.params()?;
            let report = dispersion::group_velocity(&params, &config.quad, config.step())?;
            emit(
                &config,
                &output::report_table(&report),
                Format::Csv,
                Shape::Rows,
                out,
            )
        }
        Command::Sweep(common) => {
            let config = load(&common)?;
            let rows = sweep::sweep(&config)?;
            let table = output::sweep_table(config.sweep.variable.column(), &rows);
            emit(&config, &table, Format::Csv, Shape::Rows, out)
        }
        Command::Numerator(common) => {
            let config = load(&common)?;
            let params = config.params()?;
            let grid: Vec<f64> = config
                .grid
                .values()
                .iter()
                .map(|d| d * params.gamma)
                .collect();
            let points = dispersion::numerator_scan(&params, &grid, &config.quad, config.step())?;
            emit(
                &config,
                &output::numerator_table(&points, params.gamma),
                Format::Csv,
                Shape::Rows,
                out,
            )
        }
        Command::FindStop { common, bracket } => {
            let config = load(&common)?;
            let bracket = match bracket {
                Some(text) => parse_bracket(&text)?,
                None => config.bracket,
            };
            let result = sweep::find_stop_omega(&config, bracket)?;
            emit(
                &config,
                &output::stop_light_table(&result),
                Format::Json,
                Shape::Object,
                out,
            )
        }
        Command::Params { common, emit } => {
            let config = load(&common)?;
            let mut text = config.to_toml_string();
            if !emit {
                let derived = config.params()?.derived()?;
                let _ = write!(
                    text,
                    "\n# derived\n# loop_detuning = {:e} rad/s\n# probe_frequency = {:e} rad/s\n\
                     # wavenumber = {:e} 1/cm\n# d13_sq = {:e} (esu cm)^2\n# chi_prefactor = {:e}\n",
                    derived.loop_detuning,
                    derived.probe_frequency,
                    derived.wavenumber,
                    derived.dipole_sq,
                    derived.chi_prefactor,
                );
            }
            match &config.output.path {
                Some(path) if emit => std::fs::write(path, text)?,
                _ => out.write_all(text.as_bytes())?,
            }
            Ok(())
        }
    }
}
