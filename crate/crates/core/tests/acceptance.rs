//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::path::Path;

use common::{eit_sigma13, max_elementwise, ode_steady_state, random_params};
use stoplight::dispersion::{self, DEFAULT_STEP_OVER_GAMMA};
use stoplight::liouville::{self, VelocityClass};
use stoplight::params::{SystemParams, DEFAULT_GAMMA as GAMMA};
use stoplight::scan::{self, RunConfig, SweepRow};
use stoplight::susceptibility::{self, QuadratureSpec, VelocityGrid};
use stoplight::Complex64;

const PAPER_OMEGA_STAR: f64 = 1741e-6;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: String) {
        self.pass &= ok;
        self.details
            .push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, what: String) {
        self.details.push(format!("     {what}"));
    }
}

fn load(name: &str) -> RunConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name);
    RunConfig::from_file(&path).unwrap()
}

fn sign_changes(values: &[f64]) -> usize {
    values
        .windows(2)
        .filter(|w| w[0].signum() != w[1].signum())
        .count()
}

fn series(
    rows: &[SweepRow],
    f: impl Fn(&dispersion::GroupVelocityReport) -> f64,
) -> Option<Vec<f64>> {
    rows.iter()
        .map(|r| r.result.as_ref().ok().map(&f))
        .collect()
}

struct Sweeps {
    omega_star: Option<f64>,
    detuned: Vec<SweepRow>,
    resonant: Vec<SweepRow>,
}

fn criterion_1(s: &Sweeps, root: &stoplight::Result<scan::StopLightResult>) -> Outcome {
    let mut o = Outcome::new();
    match root {
        Ok(r) => {
            let ratio = r.omega_star_over_gamma / PAPER_OMEGA_STAR;
            o.check(
                r.residual_numerator.abs() < 1e-8,
                format!(
                    "|Re num(Omega*)| = {:.2e} < 1e-8 ({} iterations)",
                    r.residual_numerator.abs(),
                    r.iterations
                ),
            );
            o.check(
                (0.8..=1.2).contains(&ratio),
                format!(
                    "Omega* = {:.6e} gamma = {ratio:.4} x 1741e-6 gamma (band 0.8..1.2)",
                    r.omega_star_over_gamma
                ),
            );
            o.note(format!("equivalent field {:.3e} G", r.equivalent_b_field));
        }
        Err(e) => o.check(false, format!("find_stop_omega failed: {e}")),
    }
    match series(&s.detuned, |r| r.numerator.re) {
        Some(num) => o.check(
            sign_changes(&num) == 1,
            format!("exactly one Re num sign change over 200 log points in [1e-4, 1e-2] gamma (found {})", sign_changes(&num)),
        ),
        None => o.check(false, "sweep had failing rows".into()),
    }
    o
}

fn criterion_2(s: &Sweeps) -> Outcome {
    let mut o = Outcome::new();
    let Some(star) = s.omega_star else {
        o.check(false, "no root available".into());
        return o;
    };
    let mut below_negative = true;
    let mut above_positive = true;
    for row in &s.detuned {
        let Ok(r) = &row.result else {
            o.check(false, format!("row Omega = {:e} failed", row.value));
            continue;
        };
        if row.value < star {
            below_negative &= r.vg < 0.0;
        } else if row.value > star {
            above_positive &= r.vg > 0.0;
        }
    }
    o.check(
        below_negative,
        "detuned: vg < 0 at every Omega below Omega*".into(),
    );
    o.check(
        above_positive,
        "detuned: vg > 0 at every Omega above Omega*".into(),
    );
    match series(&s.resonant, |r| r.vg) {
        Some(vg) => {
            let min = vg.iter().cloned().fold(f64::INFINITY, f64::min);
            o.check(
                sign_changes(&vg) == 0 && min > 0.0,
                format!("resonant: vg > 0 throughout (min {min:.4e} cm/s)"),
            );
        }
        None => o.check(false, "resonant sweep had failing rows".into()),
    }
    o
}

fn criterion_3(s: &Sweeps) -> Outcome {
    let mut o = Outcome::new();
    let (Some(vg), Some(vg_ns)) = (
        series(&s.detuned, |r| r.vg),
        series(&s.detuned, |r| r.vg_no_spatial),
    ) else {
        o.check(false, "sweep had failing rows".into());
        return o;
    };
    o.check(
        sign_changes(&vg) == 1,
        format!("vg crosses zero ({} sign change)", sign_changes(&vg)),
    );
    let min = vg_ns.iter().cloned().fold(f64::INFINITY, f64::min);
    o.check(
        sign_changes(&vg_ns) == 0 && min > 0.0,
        format!("vg without spatial dispersion stays positive (min {min:.4e} cm/s)"),
    );
    o
}

fn im_chi(p: &SystemParams, delta1: f64, quad: &QuadratureSpec) -> f64 {
    susceptibility::chi_doppler(
        &SystemParams {
            probe_detuning: delta1 * GAMMA,
            ..*p
        },
        quad,
    )
    .unwrap()
    .im
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let config = load("fig1.toml");
    let p = config.params().unwrap();
    let quad = config.quad;
    let spacing = (config.grid.stop - config.grid.start) / (config.grid.count - 1) as f64;

    let centre = im_chi(&p, -50.0, &quad);
    let neighbours: Vec<f64> = [-2.0, -1.0, 1.0, 2.0]
        .iter()
        .map(|k| im_chi(&p, -50.0 + k * spacing, &quad))
        .collect();
    o.check(
        neighbours.iter().all(|&n| n > centre),
        format!("Im<chi> at -50 gamma ({centre:.4e}) below its grid neighbours at +-{spacing}, +-{} gamma", 2.0 * spacing),
    );
    let wing = im_chi(&p, -55.0, &quad).min(im_chi(&p, -45.0, &quad));
    o.check(
        wing >= 5.0 * centre,
        format!(
            "dip ratio {:.2} >= 5 at Omega = {:e} gamma",
            wing / centre,
            config.inputs.omega
        ),
    );

    let mut dips = Vec::new();
    for omega in [1e-4, 1e-3, 3e-3] {
        let q = SystemParams {
            ll_coupling: Complex64::new(omega * GAMMA, 0.0),
            ..p
        };
        let dip = im_chi(&q, -50.0, &quad);
        let wing = im_chi(&q, -55.0, &quad).min(im_chi(&q, -45.0, &quad));
        o.note(format!(
            "Omega = {omega:e} gamma: dip {dip:.4e}, wing {wing:.4e}, ratio {:.2}",
            wing / dip
        ));
        dips.push(dip);
    }
    o.check(
        dips.windows(2).all(|w| w[1] < w[0]),
        "dip absorption decreases as Omega grows over {1e-4, 1e-3, 3e-3} gamma".into(),
    );
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let base = SystemParams {
        ll_coupling: Complex64::new(0.0, 0.0),
        ..SystemParams::default()
    };
    let mut worst: f64 = 0.0;
    for kv in [0.0, -30.0 * GAMMA, 75.0 * GAMMA] {
        for i in 0..200 {
            let p = SystemParams {
                probe_detuning: (-60.0 + 20.0 * i as f64 / 199.0) * GAMMA,
                ..base
            };
            let solved = VelocityClass::new(&p, kv)
                .unwrap()
                .sideband_plus(0.0)
                .unwrap()
                .coherence_13();
            let exact = eit_sigma13(&p, kv);
            worst = worst.max((solved - exact).norm() / exact.norm());
        }
    }
    o.check(worst < 1e-10, format!("Omega = 0 closed form vs linear solve, 200 detunings x 3 velocities: max rel err {worst:.2e}"));

    let mut worst: f64 = 0.0;
    for (k, p) in random_params(20).iter().enumerate() {
        let kv = (k as f64 - 10.0) * 3.0 * GAMMA;
        let solved = liouville::steady_state_zeroth(p, kv / p.wavenumber())
            .unwrap()
            .sigma;
        worst = worst.max(max_elementwise(&solved, &ode_steady_state(p, kv)));
    }
    o.check(
        worst < 1e-8,
        format!("steady state vs long-time integration, 20 draws: max abs err {worst:.2e}"),
    );
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let quad = QuadratureSpec::default();
    let step = DEFAULT_STEP_OVER_GAMMA * GAMMA;

    let mut herm: f64 = 0.0;
    let mut trace: f64 = 0.0;
    let mut diag_ok = true;
    for p in random_params(200) {
        for kv in [-100.0, 0.0, 40.0] {
            let s = liouville::steady_state_zeroth(&p, kv * GAMMA / p.wavenumber()).unwrap();
            herm = herm.max(s.hermiticity_error());
            trace = trace.max((s.trace() - 1.0).norm());
            diag_ok &= s.sigma.iter().enumerate().all(|(i, row)| {
                let d = row[i];
                d.im.abs() <= 1e-10 && d.re >= -1e-10 && d.re <= 1.0 + 1e-10
            });
        }
    }
    o.check(
        herm <= 1e-10 && trace <= 1e-10 && diag_ok,
        format!("sigma0 hermiticity {herm:.1e}, trace {trace:.1e}, diagonal in [0, 1]"),
    );

    let p = SystemParams::default();
    let reference = susceptibility::chi_atom(&p, 0.0).unwrap();
    let mut phase_err: f64 = 0.0;
    for (phi, g) in [(0.7, 1e-3), (-2.1, 1e-6), (3.0, 1e-2)] {
        let q = SystemParams {
            relative_phase: phi,
            probe: Complex64::from_polar(g * GAMMA, phi),
            ..p
        };
        phase_err = phase_err.max(
            (susceptibility::chi_atom(&q, 0.0).unwrap() - reference).norm() / reference.norm(),
        );
    }
    o.check(
        phase_err <= 1e-14,
        format!("chi independent of delta_phi and g: rel {phase_err:.1e}"),
    );

    let vacuum =
        dispersion::group_velocity(&SystemParams { density: 0.0, ..p }, &quad, step).unwrap();
    o.check(
        vacuum.vg == p.speed_of_light,
        format!("vg = c exactly at n = 0 ({} cm/s)", vacuum.vg),
    );

    for delta1 in [-50.0, -49.0] {
        let q = SystemParams {
            probe_detuning: delta1 * GAMMA,
            ..p
        };
        let r = susceptibility::chi_doppler_checked(&q, &quad);
        o.check(
            r.is_ok(),
            format!("trapezoid node doubling within 1e-6 at Delta1 = {delta1} gamma"),
        );
    }

    match dispersion::doppler_response(&p, &quad, step) {
        Ok(r) => {
            o.check(
                true,
                format!(
                    "step halving settles within 1e-4 (h = {:.2e} gamma)",
                    r.step / GAMMA
                ),
            );
            let grid = VelocityGrid::new(&quad, p.doppler_width).unwrap();
            let mean_kv: f64 = grid
                .weights
                .iter()
                .zip(&grid.doppler_shifts)
                .map(|(w, x)| w * x)
                .sum();
            let k1 = p.wavenumber();
            let scale = r.dchi.norm() * p.doppler_width / k1;
            o.check(
                mean_kv.abs() <= 1e-12 * p.doppler_width && r.vchi.norm() > 1e-3 * scale,
                format!(
                    "<v> = {:.1e} cm/s while |<v dchi/domega>| = {:.3e} ({:.2} of |<dchi/domega>| D/k1)",
                    mean_kv / k1,
                    r.vchi.norm(),
                    r.vchi.norm() / scale
                ),
            );
        }
        Err(e) => o.check(false, format!("step halving failed: {e}")),
    }
    o
}

fn main() {
    let detuned_config = load("fig2.toml");
    let root = scan::find_stop_omega(&detuned_config, detuned_config.bracket);
    let sweeps = Sweeps {
        omega_star: root.as_ref().ok().map(|r| r.omega_star_over_gamma),
        detuned: scan::sweep_omega(&detuned_config).unwrap(),
        resonant: scan::sweep_omega(&load("fig2d.toml")).unwrap(),
    };

    let results = [
        ("1 stopped-light root", criterion_1(&sweeps, &root)),
        ("2 sign change of vg", criterion_2(&sweeps)),
        ("3 spatial dispersion needed", criterion_3(&sweeps)),
        ("4 transparency window", criterion_4()),
        ("5 oracle equivalence", criterion_5()),
        ("6 structural invariants", criterion_6()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        println!(
            "criterion {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" }
        );
        for line in &outcome.details {
            println!("    {line}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
