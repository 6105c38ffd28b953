//! Weak-probe susceptibility and group velocity of a Doppler-broadened
//! three-level Λ medium driven by an optical control field and a
//! lower-level (microwave) coupling field.
//!
//! The pipeline, bottom to top:
//!
//! - [`params`]: physical inputs in Gaussian units and derived constants.
//! - [`liouville`]: rotating-frame Bloch equations of one velocity class,
//!   the probe-free steady state σ⁰ and the first-order probe sideband σ⁺.
//! - [`susceptibility`]: χ of one atom and its Maxwell–Boltzmann average.
//! - [`dispersion`]: ∂⟨χ⟩/∂ω₁, the correlation ⟨v ∂χ/∂ω₁⟩ and the group
//!   velocity with and without spatial dispersion.
//! - [`scan`]: configuration files, parameter sweeps, the stopped-light
//!   root finder and the command-line front end.
//!
//! ```no_run
//! use stoplight::{dispersion, params::SystemParams, susceptibility::QuadratureSpec};
//!
//! let params = SystemParams::default();
//! let step = dispersion::DEFAULT_STEP_OVER_GAMMA * params.gamma;
//! let report = dispersion::group_velocity(&params, &QuadratureSpec::default(), step)?;
//! println!("v_g = {} cm/s", report.vg);
//! # Ok::<(), stoplight::Error>(())
//! ```

// `!(x < y)` is used on purpose so NaN inputs fail validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dispersion;
pub mod error;
pub mod linalg;
pub mod liouville;
pub mod params;
pub mod scan;
pub mod susceptibility;

pub use error::{Error, Result};
pub use num_complex::Complex64;
