//! Group velocity against the lower-level coupling Ω, with and without the
//! spatial-dispersion term, for a detuned and a resonant control field.
//!
//! ```text
//! cargo run --release --example group_velocity_sweep [-- POINTS]
//! ```

use std::path::Path;

use stoplight::scan::{self, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(25);
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");

    for name in ["fig2.toml", "fig2d.toml"] {
        let mut config = RunConfig::from_file(&configs.join(name))?;
        config.sweep.count = points;
        println!("{name}: Delta1 = Delta2 = {} gamma", config.inputs.delta1);
        println!(
            "{:>12} {:>14} {:>14} {:>12}",
            "Omega/gamma", "vg [cm/s]", "no spatial", "Re num"
        );
        for row in scan::sweep_omega(&config)? {
            match row.result {
                Ok(r) => println!(
                    "{:>12.4e} {:>14.4e} {:>14.4e} {:>12.4e}",
                    row.value, r.vg, r.vg_no_spatial, r.numerator.re
                ),
                Err(e) => println!("{:>12.4e} failed: {e}", row.value),
            }
        }
        println!();
    }
    Ok(())
}
