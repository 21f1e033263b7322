use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;

use super::{require, OutputArgs, PhysicsArgs};
use crate::output::{csv, json_report, to_value, Check, CliResult, Run, Table};
use crate::range::Grid;
use kgwave::signalfront::{
    analytic_envelope, front_velocity_experiment, propagate_signal, FrequencyGrid, FrontExperiment,
    PropagationLaw, FRONT_VELOCITY_SLACK,
};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    /// `K0(q rho)` modes, group velocity above c for q > mu.
    Super,
    /// Bessel beams `J0(Q rho)`, group velocity below c.
    Sub,
}

#[derive(Args, Debug, Serialize)]
pub struct FrontSpeedArgs {
    #[arg(long, value_enum, default_value_t = Law::Super)]
    pub law: Law,
    /// Radial decay constant q (super) or transverse wavenumber Q (sub).
    #[arg(long, visible_alias = "Q", default_value_t = 2.0)]
    pub q: f64,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Carrier frequency of the source `theta(t) sin(omega0 t) exp(-gamma t)`.
    #[arg(long, default_value_t = 20.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Propagation distances, increasing, at least four.
    #[arg(long, default_value = "5,10,15,20")]
    pub z: Grid,
    /// Number of frequency samples (power of two).
    #[arg(long, default_value_t = 1 << 20)]
    pub n: usize,
    /// Time window; the signal is periodic with this period.
    #[arg(long, default_value_t = 256.0)]
    pub window: f64,
    /// Front detection level as a fraction of the peak.
    #[arg(long, default_value_t = 1e-3)]
    pub threshold: f64,
    #[arg(long, default_value = "0.1,0.01,0.001,0.0001")]
    pub sweep: Grid,
    /// Keep every n-th time sample in the per-distance signal files.
    #[arg(long, default_value_t = 64)]
    pub psi_stride: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

pub fn run(args: &FrontSpeedArgs) -> CliResult<Run> {
    let params = args.physics.params()?;
    require(args.psi_stride >= 1, || "--psi-stride must be >= 1".into())?;
    require(args.sweep.values().iter().all(|&s| s > 0.0 && s < 1.0), || {
        "--sweep thresholds must lie in (0, 1)".into()
    })?;
    let law = match args.law {
        Law::Super => PropagationLaw::Superluminal { q: args.q },
        Law::Sub => PropagationLaw::Subluminal { q: args.q },
    };
    let exp = FrontExperiment {
        law,
        params,
        omega0: args.omega0,
        gamma: args.gamma,
        zs: args.z.values().to_vec(),
        grid: FrequencyGrid::new(args.n, args.window)?,
        threshold: args.threshold,
        sweep: args.sweep.values().to_vec(),
    };
    let summary = front_velocity_experiment(&exp)?;
    let c = params.c;

    let spectrum = kgwave::signalfront::source_spectrum(
        kgwave::signalfront::SourceWindow {
            omega0: args.omega0,
            gamma: args.gamma,
            taper: None,
        },
        exp.grid,
    )?;
    let config = to_value(args);
    let mut files = Vec::new();
    for (i, &z) in exp.zs.iter().enumerate() {
        let series = propagate_signal(&spectrum, z, &law, &params)?;
        let envelope = analytic_envelope(&spectrum, z, &law, &params)?;
        let rows = (0..series.values.len())
            .step_by(args.psi_stride)
            .map(|k| vec![series.time(k), series.values[k].re, envelope[k]])
            .collect();
        let table = Table {
            labels: Vec::new(),
            columns: vec!["t", "psi", "envelope"],
            rows,
        };
        files.push((format!("front_psi_z{i}.csv"), csv(&config, &[format!("z = {z}")], &table)));
    }
    let reports = Table {
        labels: Vec::new(),
        columns: vec!["z", "front_arrival", "peak_arrival", "light_arrival", "threshold", "pre_front_level"],
        rows: summary
            .reports
            .iter()
            .map(|r| vec![r.z, r.front_arrival, r.peak_arrival, r.light_arrival, r.threshold, r.pre_front_level])
            .collect(),
    };
    files.push(("front_reports.csv".into(), csv(&config, &[], &reports)));

    let mut checks = vec![
        Check::new(
            "causality",
            summary.causal,
            summary
                .reports
                .iter()
                .map(|r| format!("z={}: front-z/c={:.3e}", r.z, r.front_arrival - r.light_arrival))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        Check::new(
            "front_velocity_bound",
            summary.front_within_bound,
            format!(
                "front velocity {:.6} c (limit {:.3} c)",
                summary.front_velocity / c,
                1.0 + FRONT_VELOCITY_SLACK
            ),
        ),
    ];
    if args.law == Law::Super && args.q > params.mu {
        checks.push(Check::new(
            "peak_superluminal",
            summary.peak_superluminal,
            format!(
                "peak velocity {:.6} c, group velocity {:.6} c",
                summary.peak_velocity / c,
                summary.predicted_group_velocity.unwrap_or(f64::NAN) / c
            ),
        ));
    }
    let body = json!({ "summary": to_value(&summary) });
    files.push(("front_speed.json".into(), json_report("front-speed", &config, body, &checks)));
    Ok(Run { files, checks })
}
