//! Parameter sweeps and the stopped-light root search.

use rayon::prelude::*;

use crate::dispersion::{self, GroupVelocityReport};
use crate::error::{Error, Result};
use crate::params::equivalent_magnetic_field;

use super::config::{ConfigError, RunConfig, SweepVariable};

/// Iteration cap for the root search.
pub const MAX_ROOT_ITERATIONS: usize = 200;
/// |Re numerator| below which Ω counts as a root.
pub const ROOT_RESIDUAL: f64 = 1e-8;
/// Bracket width (units of γ) below which the search stops.
pub const ROOT_WIDTH: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SweepRow {
    /// Swept value in configuration units.
    pub value: f64,
    pub result: Result<GroupVelocityReport>,
}

/// Evaluates the group velocity at every point of `config.sweep`. A failing
/// point is reported in its row and does not stop the sweep.
pub fn sweep(config: &RunConfig) -> Result<Vec<SweepRow>, ConfigError> {
    config.validate()?;
    let spec = config.sweep;
    let rows = spec
        .values()
        .into_par_iter()
        .map(|value| {
            let mut inputs = config.inputs;
            inputs.set_sweep_value(spec.variable, value);
            let params = inputs.to_params();
            let result = dispersion::group_velocity(&params, &config.quad, config.step());
            SweepRow { value, result }
        })
        .collect();
    Ok(rows)
}

/// [`sweep`] restricted to Ω sweeps.
pub fn sweep_omega(config: &RunConfig) -> Result<Vec<SweepRow>, ConfigError> {
    if config.sweep.variable != SweepVariable::Omega {
        return Err(ConfigError::InvalidValue {
            key: "sweep.variable".into(),
            reason: format!("expected Omega, got {}", config.sweep.variable.key()),
        });
    }
    sweep(config)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopLightResult {
    /// Ω* [rad/s].
    pub omega_star: f64,
    pub omega_star_over_gamma: f64,
    /// Search bracket [rad/s].
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Re[1 + 2πk₁⟨v ∂χ/∂ω₁⟩] at Ω*.
    pub residual_numerator: f64,
    /// Magnetic field whose Zeeman coupling equals Ω* [G].
    pub equivalent_b_field: f64,
}

/// Re numerator as a function of Ω/γ with everything else from `config`.
fn numerator_re(config: &RunConfig, omega_over_gamma: f64) -> Result<f64> {
    let mut inputs = config.inputs;
    inputs.omega = omega_over_gamma;
    let params = inputs.to_params();
    Ok(
        dispersion::group_velocity(&params, &config.quad, config.step())?
            .numerator
            .re,
    )
}

/// Finds Ω* in `bracket` (units of γ) where Re[numerator] changes sign, by
/// regula falsi with the Illinois modification.
pub fn find_stop_omega(config: &RunConfig, bracket: (f64, f64)) -> Result<StopLightResult> {
    config.validate().map_err(|e| Error::InvalidParameter {
        name: "config",
        reason: e.to_string(),
    })?;
    let (lo, hi) = bracket;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(crate::error::invalid(
            "bracket",
            format!("need lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let gamma = config.inputs.gamma;
    let finish = |root: f64, residual: f64, iterations: usize| StopLightResult {
        omega_star: root * gamma,
        omega_star_over_gamma: root,
        bracket: (lo * gamma, hi * gamma),
        iterations,
        residual_numerator: residual,
        equivalent_b_field: equivalent_magnetic_field(root * gamma, gamma),
    };

    let (mut a, mut fa) = (lo, numerator_re(config, lo)?);
    let (mut b, mut fb) = (hi, numerator_re(config, hi)?);
    if fa == 0.0 {
        return Ok(finish(a, fa, 0));
    }
    if fb == 0.0 {
        return Ok(finish(b, fb, 0));
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo: lo * gamma,
            hi: hi * gamma,
            f_lo: fa,
            f_hi: fb,
        });
    }

    for iteration in 1..=MAX_ROOT_ITERATIONS {
        let (left, right) = (a.min(b), a.max(b));
        let mut c = b - fb * (b - a) / (fb - fa);
        if !(c > left && c < right) {
            c = 0.5 * (left + right);
        }
        let fc = numerator_re(config, c)?;
        if fc.abs() < ROOT_RESIDUAL {
            return Ok(finish(c, fc, iteration));
        }
        if fc.signum() != fb.signum() {
            a = b;
            fa = fb;
        } else {
            fa *= 0.5;
        }
        b = c;
        fb = fc;
        if (b - a).abs() < ROOT_WIDTH {
            return Ok(finish(b, fb, iteration));
        }
    }
    let (best, residual) = if fa.abs() < fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    Err(Error::RootNotConverged {
        best: best * gamma,
        residual,
        iterations: MAX_ROOT_ITERATIONS,
    })
}
