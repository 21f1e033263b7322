use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;

use super::{require, OutputArgs, PhysicsArgs};
use crate::output::{json_report, to_value, Check, CliError, CliResult, Run};
use crate::range::Grid;
use kgwave::propagator::{
    classical_limit_slope, default_spacelike_grid, equal_interval_events, measure_kernel_constant,
    spacelike_check, spacelike_closed_form, spacelike_grid_check, timelike_propagator, KernelKind,
};
use kgwave::quadrature::{QuadratureSpec, Regulator};

/// Equal-interval timelike pair `(rho, tau)` in units of `1/mu`, both at `lambda = 1`.
const LAMBDA_PAIR: [(f64, f64); 2] = [(0.3, 1.044_030_650_891_055), (0.6, 1.166_190_378_969_060_2)];
/// Timelike point used for the regulator comparison.
const REGULATOR_POINT: (f64, f64) = (0.5, 1.5);

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridChoice {
    /// rho in {0.5,1,2,4,8}/mu, tau~ in {0,0.5,1,2,4}/mu.
    Default,
    /// Cartesian product of `--rho` and `--tau-tilde`.
    Custom,
}

#[derive(Args, Debug, Serialize)]
pub struct PropagatorCheckArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, value_enum, default_value_t = GridChoice::Default)]
    pub grid: GridChoice,
    #[arg(long)]
    pub rho: Option<Grid>,
    #[arg(long)]
    pub tau_tilde: Option<Grid>,
    /// Largest accepted relative error of the spacelike identity.
    #[arg(long, default_value_t = 1e-6)]
    pub bound: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-14)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_panels: usize,
    /// Tolerance of the regulated timelike integrals.
    #[arg(long, default_value_t = 1e-6)]
    pub timelike_rel_tol: f64,
    /// Regulator strengths, strictly decreasing.
    #[arg(long, default_value = "0.2,0.1,0.05,0.025,0.0125,0.00625,0.003125")]
    pub regulator_schedule: Grid,
    /// Relative agreement required of two timelike points with equal lambda.
    #[arg(long, default_value_t = 1e-4)]
    pub lambda_tol: f64,
    /// Relative agreement required of the two regulators.
    #[arg(long, default_value_t = 1e-5)]
    pub regulator_tol: f64,
    /// Largest accepted spread of kernel / J0 ratios.
    #[arg(long, default_value_t = 1e-6)]
    pub kernel_tol: f64,
    /// Masses for the log-slope fit of the closed form at lambda~ = 1.
    #[arg(long, default_value = "10:40:31")]
    pub classical_mu: Grid,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn run(args: &PropagatorCheckArgs) -> CliResult<Run> {
    let params = args.physics.params()?;
    require(params.mu > 0.0, || "mu must be > 0 for the propagator checks".into())?;
    let spec = QuadratureSpec {
        rel_tol: args.rel_tol,
        abs_tol: args.abs_tol,
        max_panels: args.max_panels,
        ..QuadratureSpec::default()
    };
    spec.validate()?;
    let timelike_spec = spec
        .clone()
        .with_rel_tol(args.timelike_rel_tol)
        .with_schedule(args.regulator_schedule.values().to_vec());
    timelike_spec.validate()?;
    let grid: Vec<(f64, f64)> = match (args.grid, &args.rho, &args.tau_tilde) {
        (GridChoice::Default, None, None) => default_spacelike_grid(&params),
        (GridChoice::Custom, Some(r), Some(t)) => r
            .values()
            .iter()
            .flat_map(|&a| t.values().iter().map(move |&b| (a, b)))
            .collect(),
        (GridChoice::Default, _, _) => {
            return Err(CliError::Precondition("--rho/--tau-tilde need --grid custom".into()))
        }
        (GridChoice::Custom, _, _) => {
            return Err(CliError::Precondition("--grid custom needs both --rho and --tau-tilde".into()))
        }
    };
    let cm = args.classical_mu.values();
    require(cm.len() >= 2 && cm.windows(2).all(|w| w[1] > w[0]) && cm[0] > 0.0, || {
        "--classical-mu must be an increasing positive grid of at least two masses".into()
    })?;
    let scale = params.mu.recip();

    // spacelike identity
    let reports = spacelike_grid_check(&grid, &params, &spec)?;
    let anchor = spacelike_check(scale, 0.0, &params, &spec)?;
    let anchor_exact = spacelike_closed_form(scale, &params)?;
    let max_rel = reports.iter().map(|r| r.rel_error).fold(0.0, f64::max);
    let unconverged: Vec<_> = reports.iter().filter(|r| !r.quadrature.converged).collect();

    // inner kernels
    let offsets: Vec<f64> = (0..10).map(|i| 0.25 * i as f64 - 1.0).collect();
    let kernels = [KernelKind::Timelike, KernelKind::Spacelike]
        .into_iter()
        .map(|kind| {
            let offs: Vec<f64> = match kind {
                KernelKind::Timelike => offsets.iter().map(|o| o * scale).collect(),
                KernelKind::Spacelike => offsets.iter().map(|o| o * scale / params.c).collect(),
            };
            let events = equal_interval_events(kind, scale, &offs, &params);
            measure_kernel_constant(kind, params.mu, &events, &params, &spec)
        })
        .collect::<kgwave::Result<Vec<_>>>()?;
    let kernel_unconverged = kernels
        .iter()
        .flat_map(|k| &k.samples)
        .filter(|s| !s.kernel.converged)
        .count();

    // timelike properties
    let timelike = |(rho, tau): (f64, f64), reg| timelike_propagator(rho * scale, tau * scale, &params, reg, &timelike_spec);
    let pair = [
        timelike(LAMBDA_PAIR[0], Regulator::Exponential)?,
        timelike(LAMBDA_PAIR[1], Regulator::Exponential)?,
    ];
    let regs = [
        timelike(REGULATOR_POINT, Regulator::Exponential)?,
        timelike(REGULATOR_POINT, Regulator::Gaussian)?,
    ];
    let timelike_unconverged = pair.iter().chain(&regs).filter(|r| !r.result.converged).count();
    let lambda_rel = rel(pair[0].result.value, pair[1].result.value);
    let regulator_rel = rel(regs[0].result.value, regs[1].result.value);

    let slope = classical_limit_slope(1.0, cm[0], cm[cm.len() - 1], cm.len())?;

    let body = json!({
        "spacelike": {
            "grid": to_value(&reports),
            "max_rel_error": max_rel,
            "bound": args.bound,
            "anchor": { "report": to_value(&anchor), "closed_form": anchor_exact },
        },
        "kernel_constants": to_value(&kernels),
        "timelike": {
            "equal_lambda_pair": to_value(&pair),
            "equal_lambda_rel_difference": lambda_rel,
            "regulator_pair": to_value(&regs),
            "regulator_rel_difference": regulator_rel,
        },
        "classical_limit": {
            "lambda_tilde": 1.0,
            "mu_min": cm[0],
            "mu_max": cm[cm.len() - 1],
            "samples": cm.len(),
            "log_slope": slope,
            "expected": -1.0,
        },
    });
    let config = to_value(args);

    if !unconverged.is_empty() || kernel_unconverged > 0 || timelike_unconverged > 0 {
        return Err(CliError::NonConvergence {
            message: format!(
                "{} grid points, {kernel_unconverged} kernel samples and {timelike_unconverged} timelike integrals missed their tolerance",
                unconverged.len()
            ),
            diagnostics: json!({ "config": config, "report": body }),
        });
    }

    let mut checks = vec![
        Check::new(
            "spacelike_identity",
            max_rel <= args.bound,
            format!("max rel error {max_rel:.3e} over {} points (bound {:.0e})", reports.len(), args.bound),
        ),
        Check::new(
            "spacelike_anchor",
            anchor.rel_error <= args.bound,
            format!("rho = 1/mu, tau~ = 0: {:.16e} vs {anchor_exact:.16e}", anchor.lhs),
        ),
    ];
    for k in &kernels {
        let name = match k.kind {
            KernelKind::Timelike => "timelike_kernel_constancy",
            KernelKind::Spacelike => "spacelike_kernel_constancy",
        };
        checks.push(Check::new(
            name,
            k.max_rel_deviation <= args.kernel_tol,
            format!("constant {:.12} with spread {:.3e}", k.mean, k.max_rel_deviation),
        ));
    }
    checks.push(Check::new(
        "timelike_lambda_only",
        lambda_rel <= args.lambda_tol,
        format!("equal-lambda values differ by {lambda_rel:.3e}"),
    ));
    checks.push(Check::new(
        "timelike_regulator_agreement",
        regulator_rel <= args.regulator_tol,
        format!("exponential vs gaussian differ by {regulator_rel:.3e}"),
    ));

    Ok(Run {
        files: vec![(
            "propagator_check.json".into(),
            json_report("propagator-check", &config, body, &checks),
        )],
        checks,
    })
}
