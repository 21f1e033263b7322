//! Acceptance gate: every criterion prints one PASS/FAIL line; the binary
//! exits non-zero if any of them fails.

use std::f64::consts::{FRAC_PI_2, FRAC_1_SQRT_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use kgwave::dispersion::{group_velocity, group_velocity_excess_asymptote, phase_velocity, GroupVelocity, ModeSpec};
use kgwave::domain::{Params, SpacetimePoint};
use kgwave::modes::{evaluate_mode, kg_residual};
use kgwave::propagator::{
    classical_limit_slope, default_spacelike_grid, equal_interval_events, measure_kernel_constant, spacelike_check,
    spacelike_grid_check, timelike_propagator, KernelKind,
};
use kgwave::quadrature::{
    geometric_schedule, integrate_decaying, integrate_oscillatory, integrate_oscillatory_bessel, integrate_regulated,
    BesselZeros, QuadratureResult, QuadratureSpec, Regulator, TrigZeros,
};
use kgwave::signalfront::{front_velocity_experiment, FrequencyGrid, FrontExperiment, PropagationLaw, DEFAULT_SWEEP};
use kgwave::specfun::reference::compare_with_oracle;
use kgwave::specfun::{bessel_j0, bessel_j1, bessel_k0, bessel_k1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// K1(1) / (2 pi), from a 40-digit reference evaluation.
const ANCHOR: f64 = 0.095_796_510_968_641_2;
const K1_AT_1: f64 = 0.601_907_230_197_234_6;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn p(mu: f64) -> Params<f64> {
    Params::new(mu).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn spacelike_identity() -> Outcome {
    let params = p(1.0);
    let spec = QuadratureSpec::default();
    let grid = spacelike_grid_check(&default_spacelike_grid(&params), &params, &spec).unwrap();
    let worst = grid.iter().map(|r| r.rel_error).fold(0.0, f64::max);
    let anchor = spacelike_check(1.0, 0.0, &params, &spec).unwrap();
    let anchor_err = rel(anchor.lhs, ANCHOR).max(rel(anchor.rhs, ANCHOR));
    outcome(
        grid.len() == 25 && worst <= 1e-6 && anchor_err <= 1e-6,
        format!("max rel error {worst:.2e} over {} points; anchor error {anchor_err:.2e}", grid.len()),
    )
}

fn mode_validity() -> Outcome {
    let params = p(1.0);
    let families = [
        ("bessel beam", ModeSpec::subluminal(1.0, 1.0, params).unwrap(), 0.1..2.0),
        ("K0 mode", ModeSpec::superluminal(2.0, 2.0, params).unwrap(), 0.5..3.0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, mode, rhos) in families {
        let field = |q: &SpacetimePoint<f64>| evaluate_mode(q, &mode).map(|v| v.field());
        let (mut lo, mut hi, mut worst) = (f64::INFINITY, 0.0f64, 0.0f64);
        for _ in 0..50 {
            let q = SpacetimePoint::new(
                rng.gen_range(rhos.clone()),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            )
            .unwrap();
            let r1 = kg_residual(field, &q, 1e-3, &params).unwrap().norm();
            let r2 = kg_residual(field, &q, 5e-4, &params).unwrap().norm();
            let ratio = r1 / r2;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            worst = worst.max(r1);
        }
        ok &= lo >= 3.6 && hi <= 4.4 && worst <= 1e-5;
        notes.push(format!("{name}: ratio in [{lo:.3}, {hi:.3}], max residual {worst:.2e}"));
    }
    outcome(ok, notes.join("; "))
}

fn dispersion_claims() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sub_max = 0.0f64;
    let mut super_min = f64::INFINITY;
    let mut product = 0.0f64;
    let mut record_product = |mode: &ModeSpec<f64>, vg: f64| {
        if let Ok(vp) = phase_velocity(mode) {
            product = product.max((vp * vg.abs() - 1.0).abs());
        }
    };
    for _ in 0..10_000 {
        let params = p(rng.gen_range(0.0..5.0));
        let sub = ModeSpec::subluminal(rng.gen_range(0.01..10.0), rng.gen_range(-100.0..100.0), params).unwrap();
        let vg = group_velocity(&sub).unwrap().finite().unwrap();
        sub_max = sub_max.max(vg.abs());
        record_product(&sub, vg);

        let q = params.mu + rng.gen_range(0.01..10.0);
        let cutoff = ((q - params.mu) * (q + params.mu)).sqrt();
        let kz = cutoff * (1.0 + rng.gen_range(1e-6..100.0));
        let sup = ModeSpec::superluminal(q, kz, params).unwrap();
        match group_velocity(&sup).unwrap() {
            GroupVelocity::Finite(vg) => {
                super_min = super_min.min(vg);
                record_product(&sup, vg);
            }
            GroupVelocity::Diverges => {}
        }
    }
    let mut asym = 0.0f64;
    for _ in 0..1000 {
        let q = rng.gen_range(0.5..5.0);
        let params = p(rng.gen_range(0.0..0.9 * q));
        let kz = q * rng.gen_range(100.0..1000.0);
        let mode = ModeSpec::superluminal(q, kz, params).unwrap();
        let excess = group_velocity(&mode).unwrap().finite().unwrap() - 1.0;
        let predicted = group_velocity_excess_asymptote(q, kz, &params);
        asym = asym.max(rel(excess, predicted));
    }
    outcome(
        sub_max < 1.0 && super_min > 1.0 && product <= 1e-13 && asym <= 0.05,
        format!(
            "sub max vg {sub_max:.15}; super min vg {super_min:.15}; vp*vg-c^2 {product:.1e}; asymptote rel dev {asym:.2e}"
        ),
    )
}

fn causality_experiment() -> Outcome {
    let start = Instant::now();
    let run = |q: f64| {
        front_velocity_experiment(&FrontExperiment {
            law: PropagationLaw::Superluminal { q },
            params: p(1.0),
            omega0: 20.0,
            gamma: 0.5,
            zs: vec![5.0, 10.0, 15.0, 20.0],
            grid: FrequencyGrid::default(),
            threshold: 1e-3,
            sweep: DEFAULT_SWEEP.to_vec(),
        })
        .unwrap()
    };
    let s = run(2.0);
    let control = run(1.0);
    let elapsed = start.elapsed().as_secs_f64();
    let vg = s.predicted_group_velocity.unwrap();
    let front_ok = (0.98..=1.005).contains(&s.front_velocity);
    let peak_ok = s.peak_velocity > 1.0 && rel(s.peak_velocity, vg) <= 0.1;
    let control_ok = control
        .reports
        .iter()
        .all(|r| (r.front_arrival - r.light_arrival).abs() <= control.dt)
        && (control.front_velocity - 1.0).abs() * 15.0 <= control.dt
        && (control.peak_velocity - 1.0).abs() * 15.0 <= control.dt;
    outcome(
        front_ok && peak_ok && control_ok && elapsed <= 300.0,
        format!(
            "front velocity {:.4}c [{}]; peak velocity {:.5}c vs vg {vg:.5}c [{}]; q=mu control [{}]; {elapsed:.1}s",
            s.front_velocity,
            if front_ok { "ok" } else { "outside [0.98, 1.005]" },
            s.peak_velocity,
            if peak_ok { "ok" } else { "fail" },
            if control_ok { "ok" } else { "fail" },
        ),
    )
}

fn classical_limit() -> Outcome {
    let slope: f64 = classical_limit_slope(1.0, 10.0, 40.0, 31).unwrap();
    outcome(
        (slope + 1.0).abs() <= 0.01,
        format!("log-slope over mu in [10, 40] is {slope:.5} (want -1 +- 0.01)"),
    )
}

fn kernel_structure() -> Outcome {
    let params = p(1.0);
    let spec = QuadratureSpec::default();
    let offsets: Vec<f64> = (0..10).map(|i| 0.25 * i as f64 - 1.0).collect();
    let mut ok = true;
    let mut notes = Vec::new();
    for kind in [KernelKind::Timelike, KernelKind::Spacelike] {
        let events = equal_interval_events(kind, 1.0, &offsets, &params);
        let k = measure_kernel_constant(kind, 1.0, &events, &params, &spec).unwrap();
        ok &= k.samples.len() == 10 && k.max_rel_deviation <= 1e-6;
        notes.push(format!("{kind:?} constant {:.12} spread {:.1e}", k.mean, k.max_rel_deviation));
    }
    outcome(ok, notes.join("; "))
}

fn special_functions() -> Outcome {
    let rows = compare_with_oracle();
    let worst = rows.iter().map(|r| r.error).fold(0.0, f64::max);
    let d = |f: fn(f64) -> f64, x: f64, h: f64| (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut deriv = 0.0f64;
    for _ in 0..200 {
        let x = rng.gen_range(0.1..50.0);
        deriv = deriv
            .max((d(bessel_j0, x, 1e-5) + bessel_j1(x)).abs())
            .max((d(bessel_k0, x, 1e-5) + bessel_k1(x)).abs());
    }
    outcome(
        rows.len() == 1000 && worst <= 1e-12 && deriv <= 1e-8,
        format!("max table error {worst:.2e} over {} points; derivative identities {deriv:.2e}", rows.len()),
    )
}

type Case = (Box<dyn Fn(&QuadratureSpec<f64>) -> QuadratureResult<f64>>, f64);

fn closed_form_cases() -> Vec<Case> {
    let mut cases: Vec<Case> = vec![
        (Box::new(|s| integrate_decaying(|x: f64| (-x).exp(), 0.0, s)), 1.0),
        (Box::new(|s| integrate_decaying(|x: f64| x * bessel_k0(x), 1.0, s)), K1_AT_1),
        (Box::new(|s| integrate_decaying(|x: f64| x * (-x * x).exp(), 0.0, s)), 0.5),
        (Box::new(|s| integrate_decaying(|x: f64| 1.0 / (1.0 + x * x), 0.0, s)), FRAC_PI_2),
        (
            Box::new(|s| integrate_oscillatory_bessel(|x: f64| (-x).exp(), 1.0, 0.0, s).unwrap()),
            FRAC_1_SQRT_2,
        ),
        (
            Box::new(|s| {
                integrate_oscillatory(|x: f64| if x == 0.0 { 1.0 } else { x.sin() / x }, TrigZeros::new(0.0, PI), s)
                    .unwrap()
            }),
            FRAC_PI_2,
        ),
    ];
    for k in 1..=6 {
        let eps = 0.1 * k as f64;
        cases.push((
            Box::new(move |s| integrate_decaying(move |x: f64| (-0.7 * k as f64 * x).exp(), 0.0, s)),
            1.0 / (0.7 * k as f64),
        ));
        cases.push((
            Box::new(move |s| {
                integrate_oscillatory(move |x: f64| (-eps * x).exp() * x.cos(), TrigZeros::new(0.0, PI), s).unwrap()
            }),
            eps / (1.0 + eps * eps),
        ));
        cases.push((
            Box::new(move |s| integrate_oscillatory_bessel(move |x: f64| (-eps * x).exp(), 1.0, 0.0, s).unwrap()),
            1.0 / (1.0 + eps * eps).sqrt(),
        ));
    }
    cases
}

fn quadrature_honesty() -> Outcome {
    let (mut total, mut honest) = (0, 0);
    for (run, exact) in closed_form_cases() {
        for tol in [1e-6, 1e-8, 1e-10, 1e-12] {
            let r = run(&QuadratureSpec::default().with_rel_tol(tol));
            total += 1;
            if (r.value - exact).abs() <= 10.0 * r.error_estimate {
                honest += 1;
            }
        }
    }
    let spec = QuadratureSpec::default().with_schedule(geometric_schedule(0.2, 7));
    let cos = integrate_regulated(|x: f64, _| x.cos(), TrigZeros::new(0.0, PI), Regulator::Exponential, &spec).unwrap();
    let j0 = integrate_regulated(|x: f64, _| bessel_j0(x), BesselZeros::new(0.0, 1.0), Regulator::Exponential, &spec)
        .unwrap();
    let (e_cos, e_j0) = (cos.result.value.abs(), (j0.result.value - 1.0).abs());
    let share = honest as f64 / total as f64;
    outcome(
        share >= 0.95 && e_cos <= 1e-8 && e_j0 <= 1e-8,
        format!("honest {honest}/{total}; int cos -> 0 off by {e_cos:.1e}; int J0 -> 1 off by {e_j0:.1e}"),
    )
}

fn timelike_properties() -> Outcome {
    let params = p(1.0);
    let spec = QuadratureSpec::default().with_rel_tol(1e-6).with_schedule(geometric_schedule(0.2, 7));
    let v = |rho: f64, tau: f64, reg| timelike_propagator(rho, tau, &params, reg, &spec).unwrap().result;
    let a = v(0.3, 1.09f64.sqrt(), Regulator::Exponential);
    let b = v(0.6, 1.36f64.sqrt(), Regulator::Exponential);
    let e = v(0.5, 1.5, Regulator::Exponential);
    let g = v(0.5, 1.5, Regulator::Gaussian);
    let (dl, dr) = (rel(a.value, b.value), rel(e.value, g.value));
    outcome(
        dl <= 1e-4 && dr <= 1e-5,
        format!("equal-lambda pair differs by {dl:.1e}; regulators differ by {dr:.1e}"),
    )
}

fn run_cli(args: &[&str], dir: &Path) -> (i32, Vec<(String, Vec<u8>)>) {
    let status = Command::new(env!("CARGO_BIN_EXE_kgwave"))
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .output()
        .expect("kgwave binary runs")
        .status
        .code()
        .unwrap_or(-1);
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map(|it| {
            it.map(|e| {
                let e = e.unwrap();
                (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
            })
            .collect()
        })
        .unwrap_or_default();
    files.sort();
    (status, files)
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 5] = [
        &["dispersion", "--branch", "super", "--q", "2", "--mu", "1", "--kz", "0.1:1000:log"],
        &["mode-field", "--family", "sub", "--q", "1", "--kz", "1", "--rho", "0.1:3:30", "--z=-2:2:21"],
        &["propagator-check", "--mu", "1", "--grid", "default"],
        &["specfun-test"],
        &["front-speed"],
    ];
    let tmp = tempfile::tempdir().unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    for (i, args) in runs.iter().enumerate() {
        let a = run_cli(args, &tmp.path().join(format!("{i}a")));
        let b = run_cli(args, &tmp.path().join(format!("{i}b")));
        let same = a == b && !a.1.is_empty();
        ok &= same;
        notes.push(format!("{} -> {} ({} files, {})", args[0], a.0, a.1.len(), if same { "identical" } else { "DIFFER" }));
    }
    outcome(ok, notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("spacelike propagator identity", spacelike_identity),
        ("mode validity", mode_validity),
        ("dispersion claims", dispersion_claims),
        ("causality experiment", causality_experiment),
        ("classical limit", classical_limit),
        ("inner-kernel structure", kernel_structure),
        ("special functions", special_functions),
        ("quadrature honesty", quadrature_honesty),
        ("timelike propagator properties", timelike_properties),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {}: {}",
            i + 1,
            if result.passed { "PASS" } else { "FAIL" },
            name,
            result.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
