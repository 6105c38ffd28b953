//! Rotating-frame Bloch equations of the Λ atom at a fixed velocity, their
//! probe-free steady state σ⁰ and the first-order probe sideband σ⁺.
//!
//! The density matrix is vectorized as
//! `(σ₁₁, σ₂₂, σ₃₃, σ₁₂, σ₂₁, σ₁₃, σ₃₁, σ₂₃, σ₃₂)` and all generators are
//! expressed in units of γ (time measured in 1/γ). Matrix indices are
//! zero-based: `sigma[0][2]` is σ₁₃.
//!
//! The coherent part is generated by the rotating-frame Hamiltonian
//!
//! ```text
//! H/ħ = −(Δ₂+Δ₃)|1⟩⟨1| − Δ₃|2⟩⟨2| − (G|1⟩⟨2| + Ω|2⟩⟨3| + g e^{−i(Δ₄t+δφ)}|1⟩⟨3| + h.c.)
//! ```
//!
//! which reproduces the level equations term by term. Level |1⟩ decays at
//! 2(γ₁+γ₂) = 4γ, feeding |2⟩ and |3⟩ at 2γ each; the optical coherences
//! relax at 2γ + Γ₁₂ and 2γ + Γ₁₃, the ground coherence at Γ₂₃.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{mat_vec, solve_checked, Matrix, Vector, ONE, ZERO};
use crate::params::SystemParams;

pub const DIM: usize = 9;

/// Condition-number threshold above which a closed system is treated as
/// singular.
pub const MAX_CONDITION: f64 = 1e12;

/// (row, column) of each slot of the vectorized density matrix.
pub const BASIS: [(usize, usize); DIM] = [
    (0, 0),
    (1, 1),
    (2, 2),
    (0, 1),
    (1, 0),
    (0, 2),
    (2, 0),
    (1, 2),
    (2, 1),
];

/// Slot replaced by the trace constraint.
const TRACE_SLOT: usize = 2;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn slot(row: usize, col: usize) -> usize {
    BASIS
        .iter()
        .position(|&rc| rc == (row, col))
        .expect("level indices are 0..3")
}

pub type Matrix3 = [[Complex64; 3]; 3];

fn unvec(v: &Vector<DIM>) -> Matrix3 {
    let mut m = [[ZERO; 3]; 3];
    for (k, &(i, j)) in BASIS.iter().enumerate() {
        m[i][j] = v[k];
    }
    m
}

fn vec_of(m: &Matrix3) -> Vector<DIM> {
    std::array::from_fn(|k| {
        let (i, j) = BASIS[k];
        m[i][j]
    })
}

fn frobenius(m: &Matrix3) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Probe-free steady state of one velocity class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    pub sigma: Matrix3,
}

impl DensityMatrix {
    pub fn trace(&self) -> Complex64 {
        self.sigma[0][0] + self.sigma[1][1] + self.sigma[2][2]
    }

    /// Largest |σᵢⱼ − conj(σⱼᵢ)|.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.sigma[i][j] - self.sigma[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn populations(&self) -> [f64; 3] {
        [
            self.sigma[0][0].re,
            self.sigma[1][1].re,
            self.sigma[2][2].re,
        ]
    }
}

/// First-order probe sideband σ⁺ (not Hermitian).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidebandMatrix {
    pub sigma_plus: Matrix3,
}

impl SidebandMatrix {
    /// σ⁺₁₃, the element that carries the probe susceptibility.
    pub fn coherence_13(&self) -> Complex64 {
        self.sigma_plus[0][2]
    }

    pub fn trace(&self) -> Complex64 {
        self.sigma_plus[0][0] + self.sigma_plus[1][1] + self.sigma_plus[2][2]
    }
}

/// Truncation diagnostic comparing the two first-order sidebands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidebandDiagnostic {
    /// ‖σ⁻‖/‖σ⁺‖ (Frobenius).
    pub norm_ratio: f64,
    /// ‖σ⁻ − (σ⁺)†‖/‖σ⁺‖; vanishes when the expansion keeps σ Hermitian.
    pub conjugate_residual: f64,
}

/// Vectorized generator of one velocity class, in units of γ.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    /// Probe-free Liouvillian L(v)/γ.
    pub matrix: Matrix<DIM>,
    /// Linear map σ ↦ S₊[σ] collecting the terms proportional to
    /// g e^{−i(Δ₄t+δφ)}.
    pub probe_coupling: Matrix<DIM>,
    /// Same for the g* e^{+i(Δ₄t+δφ)} terms.
    pub probe_coupling_conj: Matrix<DIM>,
    /// Δ₄/γ. Unchanged by the Doppler shift since k₁ ≈ k₂.
    pub loop_detuning: f64,
}

impl GeneratorSystem {
    /// Builds the generator with Δ₁ and Δ₂ both shifted by −`doppler_shift`
    /// (= −k₁v, rad/s). Δ₃ is not shifted.
    pub fn with_doppler_shift(params: &SystemParams, doppler_shift: f64) -> Result<Self> {
        params.validate()?;
        let gamma = params.gamma;
        let control_detuning = (params.control_detuning - doppler_shift) / gamma;
        let ll_detuning = params.ll_detuning / gamma;
        let probe_detuning = (params.probe_detuning - doppler_shift) / gamma;
        let control = params.control / gamma;
        let ll = params.ll_coupling / gamma;

        let mut h = [[ZERO; 3]; 3];
        h[0][0] = Complex64::new(-(control_detuning + ll_detuning), 0.0);
        h[1][1] = Complex64::new(-ll_detuning, 0.0);
        h[0][1] = -control;
        h[1][0] = -control.conj();
        h[1][2] = -ll;
        h[2][1] = -ll.conj();

        let coherence_decay = |i: usize, j: usize| -> f64 {
            match (i.min(j), i.max(j)) {
                (0, 1) => 2.0 + params.dephasing_12 / gamma,
                (0, 2) => 2.0 + params.dephasing_13 / gamma,
                (1, 2) => params.dephasing_23 / gamma,
                _ => 0.0,
            }
        };

        let mut matrix = [[ZERO; DIM]; DIM];
        for (col, &(k, l)) in BASIS.iter().enumerate() {
            // −i[H, |k⟩⟨l|]
            for i in 0..3 {
                matrix[slot(i, l)][col] += -I * h[i][k];
            }
            for j in 0..3 {
                matrix[slot(k, j)][col] += I * h[l][j];
            }
            if k == l {
                if k == 0 {
                    matrix[slot(0, 0)][col] -= 4.0;
                    matrix[slot(1, 1)][col] += 2.0;
                    matrix[slot(2, 2)][col] += 2.0;
                }
            } else {
                matrix[col][col] -= coherence_decay(k, l);
            }
        }

        let mut probe_coupling = [[ZERO; DIM]; DIM];
        let mut probe_coupling_conj = [[ZERO; DIM]; DIM];
        for (col, &(k, l)) in BASIS.iter().enumerate() {
            // S₊[|k⟩⟨l|] = i(δ_{k3}|1⟩⟨l| − δ_{l1}|k⟩⟨3|)
            if k == 2 {
                probe_coupling[slot(0, l)][col] += I;
            }
            if l == 0 {
                probe_coupling[slot(k, 2)][col] -= I;
            }
            // S₋[|k⟩⟨l|] = i(δ_{k1}|3⟩⟨l| − δ_{l3}|k⟩⟨1|)
            if k == 0 {
                probe_coupling_conj[slot(2, l)][col] += I;
            }
            if l == 2 {
                probe_coupling_conj[slot(k, 0)][col] -= I;
            }
        }

        Ok(GeneratorSystem {
            matrix,
            probe_coupling,
            probe_coupling_conj,
            loop_detuning: probe_detuning - control_detuning - ll_detuning,
        })
    }

    /// Solves L σ⁰ = 0 with the σ₃₃ row replaced by Tr σ⁰ = 1.
    pub fn steady_state(&self) -> Result<DensityMatrix> {
        let mut a = self.matrix;
        a[TRACE_SLOT] = trace_row();
        let mut b = [ZERO; DIM];
        b[TRACE_SLOT] = ONE;
        let x = solve_checked(&a, &b, MAX_CONDITION)
            .map_err(|condition| Error::DegenerateSteadyState { condition })?;
        Ok(DensityMatrix { sigma: unvec(&x) })
    }

    /// Solves (L + iΔ₄)σ⁺ = −S₊[σ⁰] at the given Δ₄/γ.
    ///
    /// The σ₃₃ row is replaced by Tr σ⁺ = 0. For Δ₄ ≠ 0 this is implied by
    /// the other rows; at Δ₄ = 0 it removes the zero mode of L.
    pub fn sideband_plus(
        &self,
        steady: &DensityMatrix,
        loop_detuning: f64,
    ) -> Result<SidebandMatrix> {
        let source = mat_vec(&self.probe_coupling, &vec_of(&steady.sigma));
        let x = self.solve_sideband(&source, loop_detuning)?;
        Ok(SidebandMatrix {
            sigma_plus: unvec(&x),
        })
    }

    /// Solves (L − iΔ₄)σ⁻ = −S₋[σ⁰].
    pub fn sideband_minus(&self, steady: &DensityMatrix, loop_detuning: f64) -> Result<Matrix3> {
        let source = mat_vec(&self.probe_coupling_conj, &vec_of(&steady.sigma));
        Ok(unvec(&self.solve_sideband(&source, -loop_detuning)?))
    }

    fn solve_sideband(&self, source: &Vector<DIM>, shift: f64) -> Result<Vector<DIM>> {
        let mut a = self.matrix;
        for (k, row) in a.iter_mut().enumerate() {
            row[k] += Complex64::new(0.0, shift);
        }
        a[TRACE_SLOT] = trace_row();
        let mut b: Vector<DIM> = std::array::from_fn(|k| -source[k]);
        b[TRACE_SLOT] = ZERO;
        solve_checked(&a, &b, MAX_CONDITION)
            .map_err(|condition| Error::SidebandSingular { condition })
    }
}

fn trace_row() -> Vector<DIM> {
    let mut row = [ZERO; DIM];
    row[0] = ONE;
    row[1] = ONE;
    row[2] = ONE;
    row
}

/// Generator and steady state of a single velocity class, reused for
/// sideband solves at several probe frequencies.
#[derive(Debug, Clone)]
pub struct VelocityClass {
    pub generator: GeneratorSystem,
    pub steady: DensityMatrix,
    gamma: f64,
}

impl VelocityClass {
    pub fn new(params: &SystemParams, doppler_shift: f64) -> Result<Self> {
        let generator = GeneratorSystem::with_doppler_shift(params, doppler_shift)?;
        let steady = generator.steady_state()?;
        Ok(VelocityClass {
            generator,
            steady,
            gamma: params.gamma,
        })
    }

    /// σ⁺ with the probe frequency moved by `probe_offset` rad/s (this moves
    /// Δ₁ and Δ₄ together and leaves σ⁰ unchanged).
    pub fn sideband_plus(&self, probe_offset: f64) -> Result<SidebandMatrix> {
        let loop_detuning = self.generator.loop_detuning + probe_offset / self.gamma;
        self.generator.sideband_plus(&self.steady, loop_detuning)
    }
}

/// L(v) for an atom with velocity `velocity` [cm/s] along the beams.
pub fn build_generator(params: &SystemParams, velocity: f64) -> Result<GeneratorSystem> {
    GeneratorSystem::with_doppler_shift(params, params.wavenumber() * velocity)
}

pub fn steady_state_zeroth(params: &SystemParams, velocity: f64) -> Result<DensityMatrix> {
    build_generator(params, velocity)?.steady_state()
}

pub fn sideband_plus(params: &SystemParams, velocity: f64) -> Result<SidebandMatrix> {
    let generator = build_generator(params, velocity)?;
    let steady = generator.steady_state()?;
    generator.sideband_plus(&steady, generator.loop_detuning)
}

/// Solves both sidebands and reports how σ⁻ relates to σ⁺.
pub fn sideband_minus_check(params: &SystemParams, velocity: f64) -> Result<SidebandDiagnostic> {
    let generator = build_generator(params, velocity)?;
    let steady = generator.steady_state()?;
    let plus = generator
        .sideband_plus(&steady, generator.loop_detuning)?
        .sigma_plus;
    let minus = generator.sideband_minus(&steady, generator.loop_detuning)?;
    let plus_norm = frobenius(&plus);
    let mut diff = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            diff[i][j] = minus[i][j] - plus[j][i].conj();
        }
    }
    Ok(SidebandDiagnostic {
        norm_ratio: frobenius(&minus) / plus_norm,
        conjugate_residual: frobenius(&diff) / plus_norm,
    })
}
