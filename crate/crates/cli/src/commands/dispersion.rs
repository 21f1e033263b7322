use clap::Args;
use serde::Serialize;
use serde_json::json;

use super::{mode_spec, require, Family, Format, OutputArgs, PhysicsArgs};
use crate::output::{csv, json_report, to_value, Check, CliResult, Run, Table};
use crate::range::Grid;
use kgwave::dispersion::{dispersion_point, GroupVelocity};

/// Largest tolerated `|v_phase v_group - c^2| / c^2`.
const PRODUCT_TOL: f64 = 1e-13;

#[derive(Args, Debug, Serialize)]
pub struct DispersionArgs {
    #[arg(long, value_enum)]
    pub branch: Family,
    /// Transverse wavenumber Q (sub) or radial decay constant q (super).
    #[arg(long, visible_alias = "Q")]
    pub q: f64,
    /// Axial wavenumbers, e.g. `0.1:1000:200:log`.
    #[arg(long)]
    pub kz: Grid,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

pub fn run(args: &DispersionArgs) -> CliResult<Run> {
    let params = args.physics.params()?;
    let c = params.c;
    let mut points = Vec::new();
    let mut omitted = 0usize;
    for &kz in args.kz.values() {
        match mode_spec(args.branch, args.q, kz, params) {
            Ok(mode) => points.push(dispersion_point(&mode)?),
            Err(kgwave::Error::ImaginaryFrequency { .. }) => omitted += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let cutoff = ((args.q - args.physics.mu) * (args.q + args.physics.mu)).max(0.0).sqrt();
    require(!points.is_empty(), || {
        format!("no kz sample has a real frequency; |kz| must be at least {cutoff}")
    })?;

    let mut checks = Vec::new();
    let speeds: Vec<Option<f64>> = points.iter().map(|p| p.v_group.finite().map(f64::abs)).collect();
    match args.branch {
        Family::Sub => {
            let worst = speeds.iter().flatten().fold(0.0f64, |m, v| m.max(*v));
            checks.push(Check::new(
                "group_velocity_below_c",
                worst < c,
                format!("max |v_group| = {worst:.17e}, c = {c}"),
            ));
        }
        Family::Super if args.q > args.physics.mu => {
            let slowest = speeds.iter().map(|v| v.unwrap_or(f64::INFINITY)).fold(f64::INFINITY, f64::min);
            checks.push(Check::new(
                "group_velocity_above_c",
                slowest > c,
                format!("min |v_group| = {slowest:.17e}, c = {c}"),
            ));
        }
        Family::Super => {}
    }
    let product_err = points
        .iter()
        .filter_map(|p| match (p.v_phase, p.v_group) {
            (Some(vp), GroupVelocity::Finite(vg)) => Some(((vp * vg.abs() - c * c) / (c * c)).abs()),
            _ => None,
        })
        .fold(0.0f64, f64::max);
    checks.push(Check::new(
        "phase_group_product",
        product_err <= PRODUCT_TOL,
        format!("max |v_phase v_group - c^2| / c^2 = {product_err:.3e}"),
    ));

    let config = to_value(args);
    let mut comments = Vec::new();
    if omitted > 0 {
        comments.push(format!("omitted {omitted} samples with |kz| < {cutoff} (imaginary frequency)"));
    }
    if args.branch == Family::Super && args.q <= args.physics.mu {
        comments.push("q <= mu: superluminal family but group velocity <= c".into());
    }
    let file = match args.format {
        Format::Csv => {
            let rows = points
                .iter()
                .map(|p| {
                    let vg = match p.v_group {
                        GroupVelocity::Finite(v) => v,
                        GroupVelocity::Diverges => f64::INFINITY,
                    };
                    vec![p.kz, p.omega, p.v_phase.unwrap_or(f64::NAN), vg]
                })
                .collect();
            let table = Table {
                labels: Vec::new(),
                columns: vec!["kz", "omega", "v_phase", "v_group"],
                rows,
            };
            ("dispersion.csv".to_string(), csv(&config, &comments, &table))
        }
        Format::Json => {
            let body = json!({ "points": to_value(&points), "omitted": omitted, "notes": comments });
            ("dispersion.json".to_string(), json_report("dispersion", &config, body, &checks))
        }
    };
    Ok(Run {
        files: vec![file],
        checks,
    })
}
