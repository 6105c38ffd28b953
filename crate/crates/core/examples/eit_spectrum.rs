//! Doppler-averaged probe spectrum near the two-photon resonance for a few
//! lower-level couplings. The transparency dip deepens as Ω grows.
//!
//! ```text
//! cargo run --release --example eit_spectrum [-- out.csv]
//! ```

use stoplight::params::SystemParams;
use stoplight::scan::output;
use stoplight::susceptibility::{self, QuadratureSpec};
use stoplight::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadratureSpec::default();
    let base = SystemParams::default();
    let gamma = base.gamma;

    for omega in [1e-4, 1e-3, 3e-3] {
        let p = SystemParams {
            ll_coupling: Complex64::new(omega * gamma, 0.0),
            ..base
        };
        let at = |delta1: f64| {
            susceptibility::chi_doppler(
                &SystemParams {
                    probe_detuning: delta1 * gamma,
                    ..p
                },
                &quad,
            )
        };
        let dip = at(-50.0)?.im;
        let wing = 0.5 * (at(-55.0)?.im + at(-45.0)?.im);
        println!("Omega = {omega:.0e} gamma: Im<chi> dip {dip:.3e}, at +-5 gamma {wing:.3e}, ratio {:.1}", wing / dip);
    }

    // a coarse spectrum to a file or stdout
    let grid: Vec<f64> = (0..=80)
        .map(|i| (-60.0 + 0.25 * i as f64) * gamma)
        .collect();
    let step = stoplight::dispersion::DEFAULT_STEP_OVER_GAMMA * gamma;
    let points = susceptibility::spectrum(&base, &grid, &quad, step)?;
    let table = output::spectrum_table(&points, gamma);
    match std::env::args().nth(1) {
        Some(path) => table.write_csv(std::fs::File::create(path)?)?,
        None => table.write_csv(std::io::stdout().lock())?,
    }
    Ok(())
}
