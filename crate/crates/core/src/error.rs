use thiserror::Error;

/// Errors raised by the solvers and the parameter layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The probe-free generator has more than one stationary state.
    #[error("degenerate steady state (condition estimate {condition:.3e})")]
    DegenerateSteadyState { condition: f64 },

    #[error("sideband resonance singularity (condition estimate {condition:.3e})")]
    SidebandSingular { condition: f64 },

    #[error("quadrature not converged: node doubling changed the result by {relative_change:.3e} (relative)")]
    QuadratureNotConverged { relative_change: f64 },

    #[error("derivative not converged: step halving down to h = {step:.3e} rad/s still changes the result by {relative_change:.3e}")]
    DerivativeNotConverged { relative_change: f64, step: f64 },

    #[error("strong-susceptibility regime: |2 pi chi| = {magnitude:.3e} is not below {limit}")]
    StrongSusceptibility { magnitude: f64, limit: f64 },

    #[error(
        "no sign change in bracket [{lo:.6e}, {hi:.6e}] (f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e})"
    )]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root search did not converge after {iterations} iterations (best estimate {best:.9e}, residual {residual:.3e})")]
    RootNotConverged {
        best: f64,
        residual: f64,
        iterations: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
