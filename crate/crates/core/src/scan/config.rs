//! Run configuration: a flat key/value file (TOML syntax) plus `--set`
//! overrides.
//!
//! Rates, detunings and Rabi frequencies are given in units of γ; `gamma`,
//! `D` (rad/s), `n_density` (cm⁻³), `lambda1` (cm), `c` and `hbar` are
//! absolute CGS values. Tables are flattened, so `[sweep] count = 50` and
//! `--set sweep.count=50` name the same key.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;
use thiserror::Error;

use crate::dispersion::DEFAULT_STEP_OVER_GAMMA;
use crate::params::{DipoleModel, SystemParams};
use crate::susceptibility::{QuadratureScheme, QuadratureSpec};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },
    #[error("cannot parse configuration: {0}")]
    Syntax(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn bad(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Delta1,
    Omega,
    G,
    Density,
}

impl SweepVariable {
    pub fn key(self) -> &'static str {
        match self {
            SweepVariable::Delta1 => "Delta1",
            SweepVariable::Omega => "Omega",
            SweepVariable::G => "G",
            SweepVariable::Density => "n",
        }
    }

    /// Column name of the swept value in output tables.
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Delta1 => "delta1_over_gamma",
            SweepVariable::Omega => "omega_over_gamma",
            SweepVariable::G => "g_over_gamma",
            SweepVariable::Density => "n_density",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "Delta1" => Some(SweepVariable::Delta1),
            "Omega" => Some(SweepVariable::Omega),
            "G" => Some(SweepVariable::G),
            "n" | "n_density" => Some(SweepVariable::Density),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.count < 2 {
            return Err(bad(
                "sweep.count",
                format!("must be >= 2, got {}", self.count),
            ));
        }
        if !(self.start < self.stop) {
            return Err(bad(
                "sweep.start",
                format!("must be < sweep.stop ({} >= {})", self.start, self.stop),
            ));
        }
        if self.scale == Scale::Log && !(self.start > 0.0) {
            return Err(bad("sweep.start", "log scale requires a positive start"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        spaced(self.start, self.stop, self.count, self.scale)
    }
}

/// Δ₁ grid (units of γ) for spectra and numerator scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        spaced(self.start, self.stop, self.count, Scale::Linear)
    }
}

fn spaced(start: f64, stop: f64, count: usize, scale: Scale) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == 0 {
                return start;
            }
            if i == count - 1 {
                return stop;
            }
            let t = i as f64 / last;
            match scale {
                Scale::Linear => start + (stop - start) * t,
                Scale::Log => (start.ln() + (stop.ln() - start.ln()) * t).exp(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Physical inputs as they appear in a configuration file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamInputs {
    pub gamma: f64,
    pub g: f64,
    pub g_phase: f64,
    pub omega: f64,
    pub omega_phase: f64,
    pub g_probe: f64,
    pub g_probe_phase: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub gamma12: f64,
    pub gamma13: f64,
    pub gamma23: f64,
    pub delta_phi: f64,
    pub n_density: f64,
    pub doppler_width: f64,
    pub lambda1: f64,
    pub c: f64,
    pub hbar: f64,
    pub dipole: DipoleModel,
}

impl Default for ParamInputs {
    fn default() -> Self {
        ParamInputs::from_params(&SystemParams::default())
    }
}

impl ParamInputs {
    pub fn from_params(p: &SystemParams) -> Self {
        let gamma = p.gamma;
        ParamInputs {
            gamma,
            g: p.control.norm() / gamma,
            g_phase: p.control.arg(),
            omega: p.ll_coupling.norm() / gamma,
            omega_phase: p.ll_coupling.arg(),
            g_probe: p.probe.norm() / gamma,
            g_probe_phase: p.probe.arg(),
            delta1: p.probe_detuning / gamma,
            delta2: p.control_detuning / gamma,
            delta3: p.ll_detuning / gamma,
            gamma12: p.dephasing_12 / gamma,
            gamma13: p.dephasing_13 / gamma,
            gamma23: p.dephasing_23 / gamma,
            delta_phi: p.relative_phase,
            n_density: p.density,
            doppler_width: p.doppler_width,
            lambda1: p.wavelength,
            c: p.speed_of_light,
            hbar: p.hbar,
            dipole: p.dipole,
        }
    }

    pub fn to_params(&self) -> SystemParams {
        let gamma = self.gamma;
        SystemParams {
            gamma,
            dephasing_12: self.gamma12 * gamma,
            dephasing_13: self.gamma13 * gamma,
            dephasing_23: self.gamma23 * gamma,
            control: Complex64::from_polar(self.g * gamma, self.g_phase),
            ll_coupling: Complex64::from_polar(self.omega * gamma, self.omega_phase),
            probe: Complex64::from_polar(self.g_probe * gamma, self.g_probe_phase),
            probe_detuning: self.delta1 * gamma,
            control_detuning: self.delta2 * gamma,
            ll_detuning: self.delta3 * gamma,
            relative_phase: self.delta_phi,
            density: self.n_density,
            doppler_width: self.doppler_width,
            wavelength: self.lambda1,
            speed_of_light: self.c,
            hbar: self.hbar,
            dipole: self.dipole,
        }
    }

    pub fn set_sweep_value(&mut self, variable: SweepVariable, value: f64) {
        match variable {
            SweepVariable::Delta1 => self.delta1 = value,
            SweepVariable::Omega => self.omega = value,
            SweepVariable::G => self.g = value,
            SweepVariable::Density => self.n_density = value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: ParamInputs,
    pub sweep: SweepSpec,
    pub grid: GridSpec,
    pub quad: QuadratureSpec,
    /// Finite-difference step in units of γ.
    pub fd_step: f64,
    /// find-stop bracket in units of γ.
    pub bracket: (f64, f64),
    pub output: OutputSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: ParamInputs::default(),
            sweep: SweepSpec {
                variable: SweepVariable::Omega,
                start: 1e-4,
                stop: 1e-2,
                count: 200,
                scale: Scale::Log,
            },
            grid: GridSpec {
                start: -60.0,
                stop: -40.0,
                count: 2001,
            },
            quad: QuadratureSpec::default(),
            fd_step: DEFAULT_STEP_OVER_GAMMA,
            bracket: (1e-4, 1e-2),
            output: OutputSpec::default(),
        }
    }
}

/// A value from a file (already typed) or from the command line (raw text).
#[derive(Debug, Clone)]
pub enum RawValue {
    Toml(toml::Value),
    Text(String),
}

impl RawValue {
    fn number(&self, key: &str) -> Result<f64, ConfigError> {
        match self {
            RawValue::Toml(toml::Value::Float(x)) => Ok(*x),
            RawValue::Toml(toml::Value::Integer(i)) => Ok(*i as f64),
            RawValue::Toml(other) => Err(bad(key, format!("expected a number, got {other}"))),
            RawValue::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| bad(key, format!("malformed number `{s}`"))),
        }
    }

    fn count(&self, key: &str) -> Result<usize, ConfigError> {
        match self {
            RawValue::Toml(toml::Value::Integer(i)) if *i >= 0 => Ok(*i as usize),
            RawValue::Toml(other) => Err(bad(
                key,
                format!("expected a non-negative integer, got {other}"),
            )),
            RawValue::Text(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| bad(key, format!("malformed integer `{s}`"))),
        }
    }

    fn text(&self, key: &str) -> Result<String, ConfigError> {
        match self {
            RawValue::Toml(toml::Value::String(s)) => Ok(s.clone()),
            RawValue::Toml(other) => Err(bad(key, format!("expected a string, got {other}"))),
            RawValue::Text(s) => Ok(s.trim().trim_matches('"').to_string()),
        }
    }
}

impl RunConfig {
    /// Parses configuration text on top of the defaults.
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let mut config = RunConfig::default();
        config.merge_toml_str(text)?;
        Ok(config)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn merge_toml_str(&mut self, text: &str) -> Result<(), ConfigError> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
        let mut flat = Vec::new();
        flatten("", table, &mut flat);
        for (key, value) in flat {
            self.set(&key, &RawValue::Toml(value))?;
        }
        Ok(())
    }

    /// Applies a `KEY=VALUE` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| bad(assignment, "override must have the form KEY=VALUE"))?;
        self.set(key.trim(), &RawValue::Text(value.to_string()))
    }

    pub fn set(&mut self, key: &str, value: &RawValue) -> Result<(), ConfigError> {
        let inputs = &mut self.inputs;
        match key {
            "gamma" => inputs.gamma = value.number(key)?,
            "G" => inputs.g = value.number(key)?,
            "G_phase" => inputs.g_phase = value.number(key)?,
            "Omega" => inputs.omega = value.number(key)?,
            "Omega_phase" => inputs.omega_phase = value.number(key)?,
            "g_probe" => inputs.g_probe = value.number(key)?,
            "g_probe_phase" => inputs.g_probe_phase = value.number(key)?,
            "Delta1" => inputs.delta1 = value.number(key)?,
            "Delta2" => inputs.delta2 = value.number(key)?,
            "Delta3" => inputs.delta3 = value.number(key)?,
            "Gamma12" => inputs.gamma12 = value.number(key)?,
            "Gamma13" => inputs.gamma13 = value.number(key)?,
            "Gamma23" => inputs.gamma23 = value.number(key)?,
            "delta_phi" => inputs.delta_phi = value.number(key)?,
            "n_density" => inputs.n_density = value.number(key)?,
            "D" => inputs.doppler_width = value.number(key)?,
            "lambda1" => inputs.lambda1 = value.number(key)?,
            "c" => inputs.c = value.number(key)?,
            "hbar" => inputs.hbar = value.number(key)?,
            "dipole" => {
                inputs.dipole = match value.text(key)?.as_str() {
                    "total-decay" => DipoleModel::TotalDecay,
                    "branch-decay" => DipoleModel::BranchDecay,
                    other => {
                        return Err(bad(key, format!("expected total-decay or branch-decay, got `{other}` (use d13_sq for an explicit dipole)")))
                    }
                }
            }
            "d13_sq" => inputs.dipole = DipoleModel::Explicit(value.number(key)?),
            "fd_step" => self.fd_step = value.number(key)?,
            "sweep.variable" => {
                let text = value.text(key)?;
                self.sweep.variable = SweepVariable::parse(&text)
                    .ok_or_else(|| bad(key, format!("expected Delta1, Omega, G or n, got `{text}`")))?;
            }
            "sweep.start" => self.sweep.start = value.number(key)?,
            "sweep.stop" => self.sweep.stop = value.number(key)?,
            "sweep.count" => self.sweep.count = value.count(key)?,
            "sweep.scale" => {
                self.sweep.scale = match value.text(key)?.as_str() {
                    "linear" => Scale::Linear,
                    "log" => Scale::Log,
                    other => return Err(bad(key, format!("expected linear or log, got `{other}`"))),
                }
            }
            "grid.start" => self.grid.start = value.number(key)?,
            "grid.stop" => self.grid.stop = value.number(key)?,
            "grid.count" => self.grid.count = value.count(key)?,
            "quad.scheme" => {
                self.quad.scheme = match value.text(key)?.as_str() {
                    "gauss-hermite" => QuadratureScheme::GaussHermite,
                    "trapezoid" => QuadratureScheme::Trapezoid,
                    other => return Err(bad(key, format!("expected gauss-hermite or trapezoid, got `{other}`"))),
                }
            }
            "quad.nodes" => self.quad.nodes = value.count(key)?,
            "quad.cutoff_sigmas" => self.quad.cutoff_sigmas = value.number(key)?,
            "stop.lo" => self.bracket.0 = value.number(key)?,
            "stop.hi" => self.bracket.1 = value.number(key)?,
            "output.path" => self.output.path = Some(PathBuf::from(value.text(key)?)),
            "output.format" => {
                let text = value.text(key)?;
                self.output.format =
                    Some(Format::parse(&text).ok_or_else(|| bad(key, format!("expected csv or json, got `{text}`")))?);
            }
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Resolved physical parameters; rejects values outside their domain.
    pub fn params(&self) -> Result<SystemParams, ConfigError> {
        let p = self.inputs.to_params();
        p.validate()
            .map_err(|e| bad(config_key_for(&e), e.to_string()))?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params()?;
        self.sweep.validate()?;
        self.quad.validate().map_err(|e| match e {
            crate::Error::InvalidParameter { name, reason } => bad(name, reason),
            other => bad("quad", other.to_string()),
        })?;
        if self.grid.count < 2 {
            return Err(bad(
                "grid.count",
                format!("must be >= 2, got {}", self.grid.count),
            ));
        }
        if !(self.grid.start < self.grid.stop) {
            return Err(bad("grid.start", "must be < grid.stop"));
        }
        if !(self.fd_step > 0.0 && self.fd_step.is_finite()) {
            return Err(bad(
                "fd_step",
                format!("must be finite and > 0, got {}", self.fd_step),
            ));
        }
        Ok(())
    }

    /// Finite-difference step in rad/s.
    pub fn step(&self) -> f64 {
        self.fd_step * self.inputs.gamma
    }

    /// Configuration text that reproduces this run when read back.
    pub fn to_toml_string(&self) -> String {
        let i = &self.inputs;
        let mut out = String::new();
        let num = |out: &mut String, key: &str, v: f64| {
            let _ = writeln!(out, "{key} = {}", toml_float(v));
        };
        num(&mut out, "gamma", i.gamma);
        num(&mut out, "G", i.g);
        num(&mut out, "G_phase", i.g_phase);
        num(&mut out, "Omega", i.omega);
        num(&mut out, "Omega_phase", i.omega_phase);
        num(&mut out, "g_probe", i.g_probe);
        num(&mut out, "g_probe_phase", i.g_probe_phase);
        num(&mut out, "Delta1", i.delta1);
        num(&mut out, "Delta2", i.delta2);
        num(&mut out, "Delta3", i.delta3);
        num(&mut out, "Gamma12", i.gamma12);
        num(&mut out, "Gamma13", i.gamma13);
        num(&mut out, "Gamma23", i.gamma23);
        num(&mut out, "delta_phi", i.delta_phi);
        num(&mut out, "n_density", i.n_density);
        num(&mut out, "D", i.doppler_width);
        num(&mut out, "lambda1", i.lambda1);
        num(&mut out, "c", i.c);
        num(&mut out, "hbar", i.hbar);
        match i.dipole {
            DipoleModel::TotalDecay => out.push_str("dipole = \"total-decay\"\n"),
            DipoleModel::BranchDecay => out.push_str("dipole = \"branch-decay\"\n"),
            DipoleModel::Explicit(d) => num(&mut out, "d13_sq", d),
        }
        num(&mut out, "fd_step", self.fd_step);

        let s = &self.sweep;
        let _ = writeln!(out, "\n[sweep]\nvariable = \"{}\"", s.variable.key());
        num(&mut out, "start", s.start);
        num(&mut out, "stop", s.stop);
        let _ = writeln!(out, "count = {}", s.count);
        let _ = writeln!(
            out,
            "scale = \"{}\"",
            if s.scale == Scale::Log {
                "log"
            } else {
                "linear"
            }
        );

        out.push_str("\n[grid]\n");
        num(&mut out, "start", self.grid.start);
        num(&mut out, "stop", self.grid.stop);
        let _ = writeln!(out, "count = {}", self.grid.count);

        let scheme = match self.quad.scheme {
            QuadratureScheme::GaussHermite => "gauss-hermite",
            QuadratureScheme::Trapezoid => "trapezoid",
        };
        let _ = writeln!(
            out,
            "\n[quad]\nscheme = \"{scheme}\"\nnodes = {}",
            self.quad.nodes
        );
        num(&mut out, "cutoff_sigmas", self.quad.cutoff_sigmas);

        out.push_str("\n[stop]\n");
        num(&mut out, "lo", self.bracket.0);
        num(&mut out, "hi", self.bracket.1);

        if self.output.path.is_some() || self.output.format.is_some() {
            out.push_str("\n[output]\n");
            if let Some(path) = &self.output.path {
                let _ = writeln!(
                    out,
                    "path = {}",
                    toml::Value::String(path.display().to_string())
                );
            }
            if let Some(format) = self.output.format {
                let _ = writeln!(out, "format = \"{}\"", format.name());
            }
        }
        out
    }
}

fn flatten(prefix: &str, table: toml::Table, out: &mut Vec<(String, toml::Value)>) {
    for (key, value) in table {
        let full = if prefix.is_empty() {
            key
        } else {
            format!("{prefix}.{key}")
        };
        match value {
            toml::Value::Table(inner) => flatten(&full, inner, out),
            other => out.push((full, other)),
        }
    }
}

fn config_key_for(e: &crate::Error) -> &'static str {
    match e {
        crate::Error::InvalidParameter { name, .. } => match *name {
            "gamma" => "gamma",
            "dephasing_12" => "Gamma12",
            "dephasing_13" => "Gamma13",
            "dephasing_23" => "Gamma23",
            "density" => "n_density",
            "doppler_width" => "D",
            "wavelength" => "lambda1",
            "speed_of_light" => "c",
            "hbar" => "hbar",
            "control" => "G",
            "ll_coupling" => "Omega",
            "probe" => "g_probe",
            "probe_detuning" => "Delta1",
            "control_detuning" => "Delta2",
            "ll_detuning" => "Delta3",
            "relative_phase" => "delta_phi",
            "dipole" => "d13_sq",
            other => other,
        },
        _ => "params",
    }
}

/// Shortest round-trip float literal that TOML reads back as a float.
fn toml_float(v: f64) -> String {
    format!("{v:?}")
}
