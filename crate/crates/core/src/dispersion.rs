//! Frequency derivatives of the Doppler-averaged susceptibility and the
//! group velocity with and without spatial dispersion.
//!
//! For a moving atom χ depends on k₁ only through ω₁ − k₁v, so
//! ∂χ/∂k₁ = −v ∂χ/∂ω₁ per velocity class and the spatial-dispersion term
//! becomes the correlation ⟨v ∂χ/∂ω₁⟩. It is accumulated node by node and is
//! never replaced by ⟨v⟩⟨∂χ/∂ω₁⟩, which vanishes for a thermal gas.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::liouville::VelocityClass;
use crate::params::SystemParams;
use crate::susceptibility::{QuadratureSpec, VelocityGrid};

/// Relative change allowed between the h and h/2 central differences.
pub const STEP_HALVING_TOLERANCE: f64 = 1e-4;
/// Further halvings attempted before giving up.
pub const MAX_HALVINGS: usize = 10;
/// Upper bound on |2π⟨χ⟩| for the weak-susceptibility formulas.
pub const WEAK_SUSCEPTIBILITY_LIMIT: f64 = 0.1;
/// Default finite-difference step in units of γ.
pub const DEFAULT_STEP_OVER_GAMMA: f64 = 1e-5;

/// ⟨χ⟩ and its ω₁ derivatives at one probe frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerResponse {
    pub chi: Complex64,
    /// ∂⟨χ⟩/∂ω₁ [s/rad].
    pub dchi: Complex64,
    /// ⟨v ∂χ/∂ω₁⟩ [cm/rad].
    pub vchi: Complex64,
    /// Step h of the accepted (h, h/2) pair [rad/s].
    pub step: f64,
}

struct Sums {
    dchi: Complex64,
    vchi: Complex64,
    dchi_scale: f64,
}

impl Sums {
    fn new(grid: &VelocityGrid, wavenumber: f64, per_node: &[Complex64]) -> Self {
        let weighted_v: Vec<Complex64> = per_node
            .iter()
            .zip(&grid.doppler_shifts)
            .map(|(d, kv)| d * (kv / wavenumber))
            .collect();
        Sums {
            dchi: grid.integrate(per_node),
            vchi: grid.integrate(&weighted_v),
            dchi_scale: grid
                .weights
                .iter()
                .zip(per_node)
                .map(|(w, d)| w * d.norm())
                .sum(),
        }
    }
}

fn central_difference(class: &VelocityClass, step: f64) -> Result<Complex64> {
    let up = class.sideband_plus(step)?.coherence_13();
    let down = class.sideband_plus(-step)?.coherence_13();
    Ok((up - down) / (2.0 * step))
}

/// Computes ⟨χ⟩, ∂⟨χ⟩/∂ω₁ and ⟨v ∂χ/∂ω₁⟩ by central differences at fixed
/// k₁. Each accepted pair D(h), D(h/2) agrees to [`STEP_HALVING_TOLERANCE`];
/// otherwise h is halved up to [`MAX_HALVINGS`] times. The returned
/// derivatives are Richardson-extrapolated from the accepted pair.
pub fn doppler_response(
    params: &SystemParams,
    quad: &QuadratureSpec,
    step: f64,
) -> Result<DopplerResponse> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(invalid(
            "fd_step",
            format!("must be finite and > 0, got {step}"),
        ));
    }
    let derived = params.derived()?;
    let grid = VelocityGrid::new(quad, params.doppler_width)?;
    let k1 = derived.wavenumber;
    let prefactor = derived.chi_prefactor;
    let velocity_spread = params.doppler_width / k1;

    let first = grid.map_nodes(|kv| {
        let class = VelocityClass::new(params, kv)?;
        Ok((
            class.sideband_plus(0.0)?.coherence_13(),
            central_difference(&class, step)?,
            central_difference(&class, step / 2.0)?,
        ))
    })?;
    let centre: Vec<Complex64> = first.iter().map(|t| t.0).collect();
    let chi = prefactor * grid.integrate(&centre);

    let mut h = step;
    let mut coarse = Sums::new(&grid, k1, &first.iter().map(|t| t.1).collect::<Vec<_>>());
    let mut fine = Sums::new(&grid, k1, &first.iter().map(|t| t.2).collect::<Vec<_>>());
    let mut halvings = 0;
    loop {
        let floor = 1e-6 * fine.dchi_scale;
        let d_change = (fine.dchi - coarse.dchi).norm() / fine.dchi.norm().max(floor);
        let v_change =
            (fine.vchi - coarse.vchi).norm() / fine.vchi.norm().max(floor * velocity_spread);
        let change = d_change.max(v_change);
        if fine.dchi_scale == 0.0 || change <= STEP_HALVING_TOLERANCE {
            let extrapolate = |c: Complex64, f: Complex64| (4.0 * f - c) / 3.0;
            return Ok(DopplerResponse {
                chi,
                dchi: prefactor * extrapolate(coarse.dchi, fine.dchi),
                vchi: prefactor * extrapolate(coarse.vchi, fine.vchi),
                step: h,
            });
        }
        if halvings == MAX_HALVINGS {
            return Err(Error::DerivativeNotConverged {
                relative_change: change,
                step: h / 2.0,
            });
        }
        halvings += 1;
        h /= 2.0;
        let next =
            grid.map_nodes(|kv| central_difference(&VelocityClass::new(params, kv)?, h / 2.0))?;
        coarse = fine;
        fine = Sums::new(&grid, k1, &next);
    }
}

/// (∂⟨χ⟩/∂ω₁, ⟨v ∂χ/∂ω₁⟩) with initial step `step` [rad/s].
pub fn dchi_domega1(
    params: &SystemParams,
    quad: &QuadratureSpec,
    step: f64,
) -> Result<(Complex64, Complex64)> {
    let r = doppler_response(params, quad, step)?;
    Ok((r.dchi, r.vchi))
}

/// Group velocity and the pieces it is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupVelocityReport {
    /// Re[c·numerator/denominator] [cm/s].
    pub vg: f64,
    /// Re[c/denominator], the group velocity without spatial dispersion [cm/s].
    pub vg_no_spatial: f64,
    /// 1 + 2πk₁⟨v ∂χ/∂ω₁⟩.
    pub numerator: Complex64,
    /// 1 + 2πω₁⟨∂χ/∂ω₁⟩.
    pub denominator: Complex64,
    pub chi_at_center: Complex64,
    pub dchi_domega: Complex64,
    pub vchi_correlation: Complex64,
    /// Intensity absorption coefficient 4π(ω₁/c)Im⟨χ⟩ [1/cm].
    pub absorption_coeff: f64,
    /// Finite-difference step actually used [rad/s].
    pub step: f64,
}

pub fn group_velocity(
    params: &SystemParams,
    quad: &QuadratureSpec,
    step: f64,
) -> Result<GroupVelocityReport> {
    let derived = params.derived()?;
    let response = doppler_response(params, quad, step)?;
    let magnitude = 2.0 * PI * response.chi.norm();
    if !(magnitude < WEAK_SUSCEPTIBILITY_LIMIT) {
        return Err(Error::StrongSusceptibility {
            magnitude,
            limit: WEAK_SUSCEPTIBILITY_LIMIT,
        });
    }
    if response.chi.im < -1e-12 * response.chi.norm() {
        log::warn!(
            "Im<chi> = {:e} < 0: medium shows gain at this point",
            response.chi.im
        );
    }
    let c = params.speed_of_light;
    let numerator = 1.0 + 2.0 * PI * derived.wavenumber * response.vchi;
    let denominator = 1.0 + 2.0 * PI * derived.probe_frequency * response.dchi;
    Ok(GroupVelocityReport {
        vg: (c * numerator / denominator).re,
        vg_no_spatial: (c / denominator).re,
        numerator,
        denominator,
        chi_at_center: response.chi,
        dchi_domega: response.dchi,
        vchi_correlation: response.vchi,
        absorption_coeff: 4.0 * PI * derived.wavenumber * response.chi.im,
        step: response.step,
    })
}

/// Group velocity with the ∂χ/∂k term dropped [cm/s].
pub fn group_velocity_no_spatial(
    params: &SystemParams,
    quad: &QuadratureSpec,
    step: f64,
) -> Result<f64> {
    Ok(group_velocity(params, quad, step)?.vg_no_spatial)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumeratorPoint {
    /// Δ₁ [rad/s].
    pub probe_detuning: f64,
    /// 1 + 2πk₁⟨v ∂χ/∂ω₁⟩.
    pub numerator: Complex64,
    /// ∂⟨χ⟩/∂ω₁ [s/rad].
    pub dchi_domega: Complex64,
}

/// Doppler-averaged numerator and susceptibility slope across a Δ₁ grid.
pub fn numerator_scan(
    params: &SystemParams,
    probe_detunings: &[f64],
    quad: &QuadratureSpec,
    step: f64,
) -> Result<Vec<NumeratorPoint>> {
    if probe_detunings.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid(
            "probe_detunings",
            "grid must be strictly increasing",
        ));
    }
    let k1 = params.derived()?.wavenumber;
    probe_detunings
        .iter()
        .map(|&delta1| {
            let p = SystemParams {
                probe_detuning: delta1,
                ..*params
            };
            let r = doppler_response(&p, quad, step)?;
            Ok(NumeratorPoint {
                probe_detuning: delta1,
                numerator: 1.0 + 2.0 * PI * k1 * r.vchi,
                dchi_domega: r.dchi,
            })
        })
        .collect()
}
