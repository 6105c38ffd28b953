//! Independent oracles shared by the integration and acceptance tests. None
//! of this goes through the crate's generator or linear solver.

#![allow(dead_code)]

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use stoplight::params::SystemParams;
use stoplight::Complex64;

pub type M3 = [[Complex64; 3]; 3];

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Probe-free Bloch equations written out element by element in units of γ
/// (γ₁ = γ₂ = 1). Lower-triangle entries follow from Hermiticity and σ₃₃
/// from trace conservation.
fn bloch_rhs(p: &Rates, s: &M3) -> M3 {
    let (g, om) = (p.control, p.ll);
    let s11 = I * g * s[1][0] - I * g.conj() * s[0][1] - 4.0 * s[0][0];
    let s22 = I * g.conj() * s[0][1] + I * om * s[2][1] - I * g * s[1][0] - I * om.conj() * s[1][2]
        + 2.0 * s[0][0];
    let s12 = -(2.0 + p.g12 - I * p.d2) * s[0][1] + I * g * s[1][1]
        - I * g * s[0][0]
        - I * om.conj() * s[0][2];
    let s13 = -(2.0 + p.g13 - I * (p.d2 + p.d3)) * s[0][2] + I * g * s[1][2] - I * om * s[0][1];
    let s23 = -(p.g23 - I * p.d3) * s[1][2] + I * g.conj() * s[0][2] + I * om * s[2][2]
        - I * om * s[1][1];
    let s33 = -(s11 + s22);
    [
        [s11, s12, s13],
        [s12.conj(), s22, s23],
        [s13.conj(), s23.conj(), s33],
    ]
}

/// Field and relaxation parameters in units of γ, Doppler shift applied.
struct Rates {
    control: Complex64,
    ll: Complex64,
    d2: f64,
    d3: f64,
    g12: f64,
    g13: f64,
    g23: f64,
}

impl Rates {
    fn new(p: &SystemParams, doppler_shift: f64) -> Self {
        let gamma = p.gamma;
        Rates {
            control: p.control / gamma,
            ll: p.ll_coupling / gamma,
            d2: (p.control_detuning - doppler_shift) / gamma,
            d3: p.ll_detuning / gamma,
            g12: p.dephasing_12 / gamma,
            g13: p.dephasing_13 / gamma,
            g23: p.dephasing_23 / gamma,
        }
    }
}

fn pack(s: &M3) -> [f64; 9] {
    [
        s[0][0].re, s[1][1].re, s[2][2].re, s[0][1].re, s[0][1].im, s[0][2].re, s[0][2].im,
        s[1][2].re, s[1][2].im,
    ]
}

fn unpack(x: &[f64; 9]) -> M3 {
    let c = Complex64::new;
    let s12 = c(x[3], x[4]);
    let s13 = c(x[5], x[6]);
    let s23 = c(x[7], x[8]);
    [
        [c(x[0], 0.0), s12, s13],
        [s12.conj(), c(x[1], 0.0), s23],
        [s13.conj(), s23.conj(), c(x[2], 0.0)],
    ]
}

fn rk4_step(p: &Rates, x: &[f64; 9], dt: f64) -> [f64; 9] {
    let f = |x: &[f64; 9]| pack(&bloch_rhs(p, &unpack(x)));
    let axpy = |x: &[f64; 9], k: &[f64; 9], a: f64| -> [f64; 9] {
        std::array::from_fn(|i| x[i] + a * k[i])
    };
    let k1 = f(x);
    let k2 = f(&axpy(x, &k1, 0.5 * dt));
    let k3 = f(&axpy(x, &k2, 0.5 * dt));
    let k4 = f(&axpy(x, &k3, dt));
    std::array::from_fn(|i| x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

type R9 = [[f64; 9]; 9];

fn mat_mul(a: &R9, b: &R9) -> R9 {
    let mut c = [[0.0; 9]; 9];
    for i in 0..9 {
        for k in 0..9 {
            let aik = a[i][k];
            for j in 0..9 {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// Long-time limit of the probe-free dynamics from σ = |3⟩⟨3|: the RK4
/// one-step map (dt = 10⁻²/γ) squared 30 times, i.e. t ≈ 10⁷/γ. Rounding in
/// the conserved mode grows with every squaring, so the trace is restored at
/// the end.
pub fn ode_steady_state(params: &SystemParams, doppler_shift: f64) -> M3 {
    let rates = Rates::new(params, doppler_shift);
    let dt = 1e-2;
    let mut step = [[0.0; 9]; 9];
    for j in 0..9 {
        let mut e = [0.0; 9];
        e[j] = 1.0;
        let col = rk4_step(&rates, &e, dt);
        for i in 0..9 {
            step[i][j] = col[i];
        }
    }
    for _ in 0..30 {
        step = mat_mul(&step, &step);
    }
    let start = [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let mut end: [f64; 9] = std::array::from_fn(|i| (0..9).map(|j| step[i][j] * start[j]).sum());
    let trace = end[0] + end[1] + end[2];
    for x in &mut end {
        *x /= trace;
    }
    unpack(&end)
}

/// σ⁺₁₃ of the Λ system without lower-level coupling, where the atom sits in
/// |3⟩: iγ / (2γ + Γ₁₃ − iΔ₁ + |G|²/(Γ₂₃ − i(Δ₁ − Δ₂))), detunings seen by the
/// moving atom.
pub fn eit_sigma13(p: &SystemParams, doppler_shift: f64) -> Complex64 {
    let d1 = p.probe_detuning - doppler_shift;
    let d2 = p.control_detuning - doppler_shift;
    let f = 2.0 * p.gamma + p.dephasing_13 - I * d1
        + p.control.norm_sqr() / (p.dephasing_23 - I * (d1 - d2));
    I * p.gamma / f
}

/// ∂σ⁺₁₃/∂Δ₁ of [`eit_sigma13`] [s/rad].
pub fn eit_sigma13_derivative(p: &SystemParams, doppler_shift: f64) -> Complex64 {
    let d1 = p.probe_detuning - doppler_shift;
    let d2 = p.control_detuning - doppler_shift;
    let raman = p.dephasing_23 - I * (d1 - d2);
    let f = 2.0 * p.gamma + p.dephasing_13 - I * d1 + p.control.norm_sqr() / raman;
    let df = -I + I * p.control.norm_sqr() / (raman * raman);
    -I * p.gamma * df / (f * f)
}

/// Deterministic draws of Bloch-equation parameters with both couplings on,
/// rates no slower than 10⁻²γ so the oracle's integration time suffices.
pub fn random_params(count: usize) -> Vec<SystemParams> {
    let gamma = stoplight::params::DEFAULT_GAMMA;
    let strategy = (
        (0.05f64..1.0, -3.0f64..3.0),
        (0.01f64..1.0, -3.0f64..3.0),
        -60.0f64..60.0,
        -2.0f64..2.0,
        (0.0f64..0.5, 0.0f64..0.5, 0.01f64..0.5),
    )
        .prop_map(
            move |((g, g_arg), (om, om_arg), d2, d3, (g12, g13, g23))| SystemParams {
                control: Complex64::from_polar(g * gamma, g_arg),
                ll_coupling: Complex64::from_polar(om * gamma, om_arg),
                control_detuning: d2 * gamma,
                ll_detuning: d3 * gamma,
                probe_detuning: (d2 + d3) * gamma,
                dephasing_12: g12 * gamma,
                dephasing_13: g13 * gamma,
                dephasing_23: g23 * gamma,
                ..SystemParams::default()
            },
        );
    let mut runner = TestRunner::deterministic();
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

pub fn max_elementwise(a: &M3, b: &M3) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}
