//! Convergence of the velocity average and of the frequency derivative.
//!
//! Single-atom features are a few γ wide against a Doppler width of ~140γ,
//! so Gauss–Hermite rules converge slowly while the truncated trapezoid rule
//! converges exponentially once its spacing resolves them. On exact
//! two-photon resonance every velocity class is dark and the integrand is
//! smooth; one γ away it is not.
//!
//! ```text
//! cargo run --release --example quadrature_convergence
//! ```

use stoplight::dispersion;
use stoplight::params::SystemParams;
use stoplight::susceptibility::{self, QuadratureSpec};

fn main() -> stoplight::Result<()> {
    let params = SystemParams::default();
    let gamma = params.gamma;

    for delta1 in [-50.0, -49.0] {
        let p = SystemParams {
            probe_detuning: delta1 * gamma,
            ..params
        };
        println!("Delta1 = {delta1} gamma");
        compare_rules(&p)?;
    }

    let quad = QuadratureSpec::default();
    println!("\nstep halving of d<chi>/d omega1:");
    for step in [1e-3, 1e-4, 1e-5] {
        match dispersion::doppler_response(&params, &quad, step * gamma) {
            Ok(r) => println!(
                "  h0 = {step:.0e} gamma -> accepted h = {:.1e} gamma, dchi = {:.6e}",
                r.step / gamma,
                r.dchi
            ),
            Err(e) => println!("  h0 = {step:.0e} gamma -> {e}"),
        }
    }
    Ok(())
}

fn compare_rules(params: &SystemParams) -> stoplight::Result<()> {
    let reference = susceptibility::chi_doppler(params, &QuadratureSpec::trapezoid(16001, 10.0))?;
    let rules = [
        QuadratureSpec::gauss_hermite(50),
        QuadratureSpec::gauss_hermite(100),
        QuadratureSpec::gauss_hermite(200),
        QuadratureSpec::trapezoid(1001, 8.0),
        QuadratureSpec::trapezoid(2001, 8.0),
        QuadratureSpec::trapezoid(4001, 8.0),
        QuadratureSpec::trapezoid(8001, 8.0),
    ];
    for quad in rules {
        let chi = susceptibility::chi_doppler(params, &quad)?;
        println!(
            "  {:?} {:>5} nodes: relative error {:.2e}",
            quad.scheme,
            quad.nodes,
            (chi - reference).norm() / reference.norm()
        );
    }
    Ok(())
}
