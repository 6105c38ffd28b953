//! Physical inputs, unit conventions and derived constants.
//!
//! Everything is Gaussian/CGS: rates and detunings in rad/s, lengths in cm,
//! densities in atoms/cm³, dipoles in esu·cm. Rabi couplings are stored as
//! half-Rabi frequencies, i.e. the full Rabi frequency of the control field
//! is `2 * control`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Speed of light [cm/s].
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;
/// Reduced Planck constant [erg·s].
pub const HBAR: f64 = 1.054_571_817e-27;
/// Boltzmann constant [erg/K].
pub const BOLTZMANN: f64 = 1.380_649e-16;
/// Unified atomic mass unit [g].
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-24;
/// Mass of ⁸⁷Rb [g].
pub const RB87_MASS: f64 = 86.909_180_527 * ATOMIC_MASS_UNIT;
/// Probe wavelength used throughout, the ⁸⁷Rb D2 line rounded to 780 nm [cm].
pub const RB87_D2_WAVELENGTH: f64 = 780.0e-7;
/// Default radiative rate γ = 3π×10⁶ rad/s.
pub const DEFAULT_GAMMA: f64 = 3.0 * PI * 1.0e6;
/// Default Doppler width parameter [rad/s].
pub const DEFAULT_DOPPLER_WIDTH: f64 = 1.33e9;
/// Default atomic density [atoms/cm³].
pub const DEFAULT_DENSITY: f64 = 1.0e12;

/// Magnetic field equivalent to an LL coupling of 10⁻⁶γ in ⁸⁷Rb [gauss].
///
/// Quoted value (0.993 μG per 10⁻⁶γ); not recomputed from atomic structure.
pub const GAUSS_PER_MICRO_GAMMA: f64 = 0.993e-6;

/// How the probe-transition dipole |d₁₃|² is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DipoleModel {
    /// Weisskopf–Wigner relation applied to the total decay rate 4γ of the
    /// excited state: 4γ = 4ω³|d|²/(3ħc³).
    TotalDecay,
    /// Weisskopf–Wigner relation applied to the |1⟩→|3⟩ channel alone:
    /// 2γ = 4ω³|d|²/(3ħc³).
    BranchDecay,
    /// Explicit |d₁₃|² in erg·cm³.
    Explicit(f64),
}

/// All physical inputs of the driven three-level Λ atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Radiative rate γ (γ₁ = γ₂ = γ) [rad/s].
    pub gamma: f64,
    /// Collisional dephasing of the |1⟩–|2⟩ coherence [rad/s].
    pub dephasing_12: f64,
    /// Collisional dephasing of the |1⟩–|3⟩ coherence [rad/s].
    pub dephasing_13: f64,
    /// Dephasing of the lower-level |2⟩–|3⟩ coherence [rad/s].
    pub dephasing_23: f64,
    /// Optical control half-Rabi frequency on |1⟩↔|2⟩ [rad/s].
    pub control: Complex64,
    /// LL (lower-level, microwave) half-Rabi frequency on |2⟩↔|3⟩ [rad/s].
    pub ll_coupling: Complex64,
    /// Probe half-Rabi frequency on |1⟩↔|3⟩ [rad/s]. Does not enter the
    /// linear susceptibility.
    pub probe: Complex64,
    /// Probe detuning ω₁ − ω₁₃ [rad/s].
    pub probe_detuning: f64,
    /// Control detuning ω₂ − ω₁₂ [rad/s].
    pub control_detuning: f64,
    /// LL field detuning ω₃ − ω₂₃ [rad/s].
    pub ll_detuning: f64,
    /// Phase of the probe relative to the control plus LL phases [rad].
    pub relative_phase: f64,
    /// Atomic number density [atoms/cm³].
    pub density: f64,
    /// Standard deviation of the k₁v distribution [rad/s].
    pub doppler_width: f64,
    /// Probe wavelength [cm].
    pub wavelength: f64,
    pub speed_of_light: f64,
    pub hbar: f64,
    pub dipole: DipoleModel,
}

impl Default for SystemParams {
    /// ⁸⁷Rb vapour with a far-detuned control at two-photon resonance.
    fn default() -> Self {
        let gamma = DEFAULT_GAMMA;
        SystemParams {
            gamma,
            dephasing_12: 0.0,
            dephasing_13: 0.0,
            dephasing_23: 1.0e-3 * gamma,
            control: Complex64::new(0.3 * gamma, 0.0),
            ll_coupling: Complex64::new(1.0e-3 * gamma, 0.0),
            probe: Complex64::new(1.0e-3 * gamma, 0.0),
            probe_detuning: -50.0 * gamma,
            control_detuning: -50.0 * gamma,
            ll_detuning: 0.0,
            relative_phase: 0.0,
            density: DEFAULT_DENSITY,
            doppler_width: DEFAULT_DOPPLER_WIDTH,
            wavelength: RB87_D2_WAVELENGTH,
            speed_of_light: SPEED_OF_LIGHT,
            hbar: HBAR,
            dipole: DipoleModel::TotalDecay,
        }
    }
}

/// Constants that follow from [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// Δ₄ = Δ₁ − Δ₂ − Δ₃ [rad/s].
    pub loop_detuning: f64,
    /// ω₁ [rad/s].
    pub probe_frequency: f64,
    /// k₁ = ω₁/c [rad/cm].
    pub wavenumber: f64,
    /// |d₁₃|² [erg·cm³].
    pub dipole_sq: f64,
    /// n|d₁₃|²/(ħγ), dimensionless.
    pub chi_prefactor: f64,
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        positive("gamma", self.gamma)?;
        non_negative("dephasing_12", self.dephasing_12)?;
        non_negative("dephasing_13", self.dephasing_13)?;
        non_negative("dephasing_23", self.dephasing_23)?;
        non_negative("density", self.density)?;
        non_negative("doppler_width", self.doppler_width)?;
        positive("wavelength", self.wavelength)?;
        positive("speed_of_light", self.speed_of_light)?;
        positive("hbar", self.hbar)?;
        for (name, value) in [
            ("control", self.control),
            ("ll_coupling", self.ll_coupling),
            ("probe", self.probe),
        ] {
            if !(value.re.is_finite() && value.im.is_finite()) {
                return Err(invalid(name, "must be finite"));
            }
        }
        for (name, value) in [
            ("probe_detuning", self.probe_detuning),
            ("control_detuning", self.control_detuning),
            ("ll_detuning", self.ll_detuning),
            ("relative_phase", self.relative_phase),
        ] {
            if !value.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        if let DipoleModel::Explicit(d) = self.dipole {
            positive("dipole", d)?;
        }
        Ok(())
    }

    /// Probe angular frequency ω₁ = 2πc/λ₁. The optical transition frequency
    /// ω₁₃ is taken equal to it; detunings are ~10⁻⁷ of ω₁.
    pub fn probe_frequency(&self) -> f64 {
        2.0 * PI * self.speed_of_light / self.wavelength
    }

    pub fn wavenumber(&self) -> f64 {
        self.probe_frequency() / self.speed_of_light
    }

    pub fn loop_detuning(&self) -> f64 {
        derive_detunings(self.probe_detuning, self.control_detuning, self.ll_detuning)
    }

    pub fn dipole_sq(&self) -> Result<f64> {
        let omega = self.probe_frequency();
        match self.dipole {
            DipoleModel::TotalDecay => {
                dipole_from_decay_rate(4.0 * self.gamma, omega, self.hbar, self.speed_of_light)
            }
            DipoleModel::BranchDecay => {
                dipole_from_gamma(self.gamma, omega, self.hbar, self.speed_of_light)
            }
            DipoleModel::Explicit(d) => Ok(d),
        }
    }

    pub fn derived(&self) -> Result<DerivedConstants> {
        self.validate()?;
        let dipole_sq = self.dipole_sq()?;
        Ok(DerivedConstants {
            loop_detuning: self.loop_detuning(),
            probe_frequency: self.probe_frequency(),
            wavenumber: self.wavenumber(),
            dipole_sq,
            chi_prefactor: self.density * dipole_sq / (self.hbar * self.gamma),
        })
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(invalid(
            name,
            format!("must be finite and >= 0, got {value}"),
        ))
    }
}

/// Loop detuning Δ₄ = Δ₁ − Δ₂ − Δ₃ (uses ω₁₃ = ω₁₂ + ω₂₃).
pub fn derive_detunings(probe: f64, control: f64, ll: f64) -> f64 {
    probe - control - ll
}

/// |d₁₃|² such that the |1⟩→|3⟩ decay rate 2γ = 4ω₁₃³|d₁₃|²/(3ħc³),
/// i.e. 3ħγc³/(2ω₁₃³).
pub fn dipole_from_gamma(gamma: f64, omega13: f64, hbar: f64, c: f64) -> Result<f64> {
    dipole_from_decay_rate(2.0 * gamma, omega13, hbar, c)
}

/// Weisskopf–Wigner: |d|² = 3ħc³·rate/(4ω³).
pub fn dipole_from_decay_rate(rate: f64, omega: f64, hbar: f64, c: f64) -> Result<f64> {
    positive("decay_rate", rate)?;
    positive("omega", omega)?;
    positive("hbar", hbar)?;
    positive("c", c)?;
    Ok(3.0 * hbar * rate * c.powi(3) / (4.0 * omega.powi(3)))
}

/// Doppler width parameter D = ω₁√(k_B T/(M c²)). Requires T ≥ 0, M > 0.
pub fn doppler_width(temperature: f64, mass: f64, omega1: f64, c: f64) -> f64 {
    omega1 * (BOLTZMANN * temperature / (mass * c * c)).sqrt()
}

/// Inverse of [`doppler_width`].
pub fn temperature_for_doppler_width(width: f64, mass: f64, omega1: f64, c: f64) -> f64 {
    let ratio = width / omega1;
    ratio * ratio * mass * c * c / BOLTZMANN
}

/// Magnetic field [gauss] equivalent to an LL half-Rabi frequency.
pub fn equivalent_magnetic_field(ll_rabi: f64, gamma: f64) -> f64 {
    ll_rabi / (1.0e-6 * gamma) * GAUSS_PER_MICRO_GAMMA
}
