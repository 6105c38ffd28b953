//! Single-velocity susceptibility and its Maxwell–Boltzmann average.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::hermite::GaussHermite;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::dispersion;
use crate::error::{invalid, Error, Result};
use crate::liouville::VelocityClass;
use crate::params::SystemParams;

/// Relative change tolerated when the node count is doubled.
pub const QUADRATURE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureScheme {
    GaussHermite,
    Trapezoid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    pub nodes: usize,
    /// Half-width of the truncated k₁v range in units of D (trapezoid only).
    pub cutoff_sigmas: f64,
}

impl Default for QuadratureSpec {
    /// Trapezoid over ±8D with 4001 nodes. Node spacing is ≈ 0.56γ at the
    /// ⁸⁷Rb vapour width, fine enough for the 2γ-wide optical line in the
    /// velocity integrand.
    fn default() -> Self {
        QuadratureSpec {
            scheme: QuadratureScheme::Trapezoid,
            nodes: 4001,
            cutoff_sigmas: 8.0,
        }
    }
}

impl QuadratureSpec {
    pub fn gauss_hermite(nodes: usize) -> Self {
        QuadratureSpec {
            scheme: QuadratureScheme::GaussHermite,
            nodes,
            cutoff_sigmas: 0.0,
        }
    }

    pub fn trapezoid(nodes: usize, cutoff_sigmas: f64) -> Self {
        QuadratureSpec {
            scheme: QuadratureScheme::Trapezoid,
            nodes,
            cutoff_sigmas,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 3 {
            return Err(invalid(
                "quad.nodes",
                format!("need at least 3 nodes, got {}", self.nodes),
            ));
        }
        if self.scheme == QuadratureScheme::Trapezoid && !(self.cutoff_sigmas >= 4.0) {
            return Err(invalid(
                "quad.cutoff_sigmas",
                format!(
                    "trapezoid cutoff must be >= 4 sigma, got {}",
                    self.cutoff_sigmas
                ),
            ));
        }
        Ok(())
    }

    /// The rule with roughly twice the resolution. For the trapezoid rule the
    /// refined grid contains the original nodes.
    pub fn refined(&self) -> Self {
        let nodes = match self.scheme {
            QuadratureScheme::GaussHermite => 2 * self.nodes,
            QuadratureScheme::Trapezoid => 2 * self.nodes - 1,
        };
        QuadratureSpec { nodes, ..*self }
    }
}

/// Doppler shifts k₁v [rad/s] and weights of a discretized Gaussian.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityGrid {
    pub doppler_shifts: Vec<f64>,
    pub weights: Vec<f64>,
}

impl VelocityGrid {
    /// Discretizes P(k₁v) with standard deviation `width`. A zero width gives
    /// a single node at rest.
    pub fn new(quad: &QuadratureSpec, width: f64) -> Result<Self> {
        quad.validate()?;
        if width == 0.0 {
            return Ok(VelocityGrid {
                doppler_shifts: vec![0.0],
                weights: vec![1.0],
            });
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(invalid(
                "doppler_width",
                format!("must be finite and >= 0, got {width}"),
            ));
        }
        match quad.scheme {
            QuadratureScheme::GaussHermite => {
                let n = NonZeroUsize::new(quad.nodes).expect("validated");
                let rule = GaussHermite::new(n);
                let norm = PI.sqrt();
                let (doppler_shifts, weights) = rule
                    .iter()
                    .map(|(x, w)| (2f64.sqrt() * width * x, w / norm))
                    .unzip();
                Ok(VelocityGrid {
                    doppler_shifts,
                    weights,
                })
            }
            QuadratureScheme::Trapezoid => {
                let n = quad.nodes;
                let half = quad.cutoff_sigmas * width;
                let step = 2.0 * half / (n - 1) as f64;
                let density = 1.0 / ((2.0 * PI).sqrt() * width);
                let mut doppler_shifts = Vec::with_capacity(n);
                let mut weights = Vec::with_capacity(n);
                for i in 0..n {
                    let kv = -half + step * i as f64;
                    let end = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                    let u = kv / width;
                    doppler_shifts.push(kv);
                    weights.push(end * step * density * (-0.5 * u * u).exp());
                }
                Ok(VelocityGrid {
                    doppler_shifts,
                    weights,
                })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Evaluates `f` at every node (possibly in parallel) and returns the
    /// values in node order.
    pub fn map_nodes<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(f64) -> Result<T> + Sync,
    {
        self.doppler_shifts.par_iter().map(|&kv| f(kv)).collect()
    }

    /// Weighted sum Σ wᵢ·values[i] accumulated in node order.
    pub fn integrate(&self, values: &[Complex64]) -> Complex64 {
        self.weights
            .iter()
            .zip(values)
            .fold(Complex64::new(0.0, 0.0), |acc, (w, v)| acc + w * v)
    }
}

/// Probe response at one grid point of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilityPoint {
    /// Δ₁ [rad/s].
    pub probe_detuning: f64,
    /// ⟨χ⟩.
    pub chi: Complex64,
    /// ∂⟨χ⟩/∂ω₁ [s/rad].
    pub dchi_domega: Complex64,
    /// ⟨v ∂χ/∂ω₁⟩ [cm/rad].
    pub vchi_correlation: Complex64,
}

/// χ of a single atom moving with `velocity` [cm/s].
pub fn chi_atom(params: &SystemParams, velocity: f64) -> Result<Complex64> {
    let prefactor = params.derived()?.chi_prefactor;
    let class = VelocityClass::new(params, params.wavenumber() * velocity)?;
    Ok(prefactor * class.sideband_plus(0.0)?.coherence_13())
}

/// ⟨χ⟩ over the Maxwell–Boltzmann distribution with the given rule.
pub fn chi_doppler(params: &SystemParams, quad: &QuadratureSpec) -> Result<Complex64> {
    let prefactor = params.derived()?.chi_prefactor;
    let grid = VelocityGrid::new(quad, params.doppler_width)?;
    let values = grid.map_nodes(|kv| {
        let class = VelocityClass::new(params, kv)?;
        Ok(class.sideband_plus(0.0)?.coherence_13())
    })?;
    Ok(prefactor * grid.integrate(&values))
}

/// [`chi_doppler`] plus a node-doubling convergence check. Returns the
/// refined value.
pub fn chi_doppler_checked(params: &SystemParams, quad: &QuadratureSpec) -> Result<Complex64> {
    let coarse = chi_doppler(params, quad)?;
    let fine = chi_doppler(params, &quad.refined())?;
    let change = (fine - coarse).norm();
    if change > QUADRATURE_TOLERANCE * fine.norm() {
        return Err(Error::QuadratureNotConverged {
            relative_change: change / fine.norm(),
        });
    }
    Ok(fine)
}

/// ⟨χ⟩ and its frequency derivatives on a strictly increasing Δ₁ grid [rad/s].
pub fn spectrum(
    params: &SystemParams,
    probe_detunings: &[f64],
    quad: &QuadratureSpec,
    step: f64,
) -> Result<Vec<SusceptibilityPoint>> {
    if probe_detunings.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid(
            "probe_detunings",
            "grid must be strictly increasing",
        ));
    }
    probe_detunings
        .iter()
        .map(|&delta1| {
            let p = SystemParams {
                probe_detuning: delta1,
                ..*params
            };
            let response = dispersion::doppler_response(&p, quad, step)?;
            Ok(SusceptibilityPoint {
                probe_detuning: delta1,
                chi: response.chi,
                dchi_domega: response.dchi,
                vchi_correlation: response.vchi,
            })
        })
        .collect()
}
