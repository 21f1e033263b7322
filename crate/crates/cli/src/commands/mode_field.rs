use clap::Args;
use serde::Serialize;
use serde_json::json;

use super::{mode_spec, Family, Format, OutputArgs, PhysicsArgs};
use crate::output::{csv, json_report, to_value, CliResult, Run, Table};
use crate::range::Grid;
use kgwave::dispersion::dispersion_point;
use kgwave::modes::mode_grid;

#[derive(Args, Debug, Serialize)]
pub struct ModeFieldArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Transverse wavenumber Q (sub) or radial decay constant q (super).
    #[arg(long, visible_alias = "Q")]
    pub q: f64,
    #[arg(long)]
    pub kz: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Radial samples; the K0 mode needs rho > 0.
    #[arg(long)]
    pub rho: Grid,
    #[arg(long)]
    pub z: Grid,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

pub fn run(args: &ModeFieldArgs) -> CliResult<Run> {
    let params = args.physics.params()?;
    let mode = mode_spec(args.family, args.q, args.kz, params)?;
    let point = dispersion_point(&mode)?;
    let (rhos, zs) = (args.rho.values(), args.z.values());
    let field = mode_grid(rhos, zs, args.t, &mode)?;

    let rows: Vec<Vec<f64>> = rhos
        .iter()
        .flat_map(|&r| zs.iter().map(move |&z| (r, z)))
        .zip(&field)
        .map(|((r, z), v)| vec![r, z, v.re, v.im, v.norm()])
        .collect();
    let columns = vec!["rho", "z", "re", "im", "abs"];
    let config = to_value(args);
    let file = match args.format {
        Format::Csv => {
            let comments = vec![format!("omega = {:.16e}", point.omega)];
            let table = Table {
                labels: Vec::new(),
                columns,
                rows,
            };
            ("mode_field.csv".to_string(), csv(&config, &comments, &table))
        }
        Format::Json => {
            let body = json!({ "dispersion": to_value(&point), "columns": columns, "rows": rows });
            ("mode_field.json".to_string(), json_report("mode-field", &config, body, &[]))
        }
    };
    Ok(Run {
        files: vec![file],
        checks: Vec::new(),
    })
}
