//! Doppler-averaged numerator 1 + 2πk₁⟨v ∂χ/∂ω₁⟩ and slope ⟨∂χ/∂ω₁⟩
//! across the probe detuning at the stopped-light coupling.
//!
//! ```text
//! cargo run --release --example numerator_scan
//! ```

use stoplight::dispersion::{self, DEFAULT_STEP_OVER_GAMMA};
use stoplight::params::SystemParams;
use stoplight::susceptibility::QuadratureSpec;
use stoplight::Complex64;

fn main() -> stoplight::Result<()> {
    let base = SystemParams::default();
    let gamma = base.gamma;
    let params = SystemParams {
        ll_coupling: Complex64::new(1.741e-3 * gamma, 0.0),
        ..base
    };
    let grid: Vec<f64> = (-10..=10)
        .map(|i| (-50.0 + 0.002 * i as f64) * gamma)
        .collect();

    let points = dispersion::numerator_scan(
        &params,
        &grid,
        &QuadratureSpec::default(),
        DEFAULT_STEP_OVER_GAMMA * gamma,
    )?;
    println!(
        "{:>12} {:>12} {:>12} {:>12}",
        "Delta1/gamma", "Re num", "Im num", "Re dchi"
    );
    for p in &points {
        println!(
            "{:>12.4} {:>12.4e} {:>12.4e} {:>12.4e}",
            p.probe_detuning / gamma,
            p.numerator.re,
            p.numerator.im,
            p.dchi_domega.re
        );
    }
    Ok(())
}
