//! Locates the coupling Ω* at which the group velocity vanishes and converts
//! it to the equivalent magnetic field.
//!
//! ```text
//! cargo run --release --example stop_light
//! ```

use std::path::Path;

use stoplight::params::DipoleModel;
use stoplight::scan::{self, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/fig2.toml");
    let mut config = RunConfig::from_file(&path)?;

    for dipole in [DipoleModel::TotalDecay, DipoleModel::BranchDecay] {
        config.inputs.dipole = dipole;
        let root = scan::find_stop_omega(&config, (1e-4, 1e-2))?;
        println!("{dipole:?}:");
        println!(
            "  Omega*         = {:.6e} gamma ({:.4e} rad/s)",
            root.omega_star_over_gamma, root.omega_star
        );
        println!(
            "  Re numerator   = {:.2e} after {} iterations",
            root.residual_numerator, root.iterations
        );
        println!("  magnetic field = {:.3e} G", root.equivalent_b_field);
    }

    // on resonance the numerator never changes sign
    config.inputs.dipole = DipoleModel::TotalDecay;
    config.inputs.delta1 = 0.0;
    config.inputs.delta2 = 0.0;
    match scan::find_stop_omega(&config, (1e-4, 1e-2)) {
        Ok(root) => println!(
            "resonant control: unexpected root {:e}",
            root.omega_star_over_gamma
        ),
        Err(e) => println!("resonant control: {e}"),
    }
    Ok(())
}
