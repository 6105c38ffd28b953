//! Configuration, sweeps, the stopped-light root search and the command line.

pub mod cli;
pub mod config;
pub mod output;
pub mod sweep;

pub use cli::{run_cli, run_cli_with};
pub use config::{
    ConfigError, Format, GridSpec, ParamInputs, RunConfig, Scale, SweepSpec, SweepVariable,
};
pub use sweep::{find_stop_omega, sweep, sweep_omega, StopLightResult, SweepRow};
