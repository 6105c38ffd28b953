//! Probe-free steady state and first-order probe sideband of single velocity
//! classes.
//!
//! ```text
//! cargo run --example steady_state
//! ```

use stoplight::liouville::{self, VelocityClass};
use stoplight::params::SystemParams;

fn main() -> stoplight::Result<()> {
    let params = SystemParams::default();
    let k1 = params.wavenumber();
    let gamma = params.gamma;

    println!(
        "{:>10} {:>12} {:>12} {:>12} {:>24}",
        "kv/gamma", "rho11", "rho22", "rho33", "sigma+_13"
    );
    for kv_over_gamma in [-100.0, -50.0, -10.0, 0.0, 10.0, 50.0, 100.0] {
        let class = VelocityClass::new(&params, kv_over_gamma * gamma)?;
        let [p1, p2, p3] = class.steady.populations();
        let sideband = class.sideband_plus(params.loop_detuning())?;
        let s13 = sideband.coherence_13();
        println!(
            "{kv_over_gamma:>10} {p1:>12.4e} {p2:>12.4e} {p3:>12.6} {:>11.4e}{:+.4e}i",
            s13.re, s13.im
        );
    }

    // the atom at the centre of the Doppler profile
    let rest = liouville::steady_state_zeroth(&params, 0.0)?;
    println!("\ntrace - 1     = {:.1e}", (rest.trace().re - 1.0).abs());
    println!("hermiticity   = {:.1e}", rest.hermiticity_error());
    let check = liouville::sideband_minus_check(&params, 0.0)?;
    println!("|s-|/|s+|     = {}", check.norm_ratio);
    println!("|s- - (s+)^H| = {:.1e}", check.conjugate_residual);
    println!("velocity of a class at kv = gamma: {:.3e} cm/s", gamma / k1);
    Ok(())
}
