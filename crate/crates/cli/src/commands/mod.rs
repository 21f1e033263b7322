mod dispersion;
mod front_speed;
mod mode_field;
mod propagator_check;

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;

use crate::output::{CliError, CliResult, Run};

pub use dispersion::DispersionArgs;
pub use front_speed::FrontSpeedArgs;
pub use mode_field::ModeFieldArgs;
pub use propagator_check::PropagatorCheckArgs;
pub use specfun_test::SpecfunTestArgs;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate omega, phase and group velocity over a kz grid.
    #[command(args_override_self = true)]
    Dispersion(DispersionArgs),
    /// Evaluate one mode on a rho x z grid at fixed t.
    #[command(args_override_self = true)]
    ModeField(ModeFieldArgs),
    /// Compare the spacelike mode integral with its closed form and measure
    /// kernel constants and timelike properties.
    #[command(args_override_self = true)]
    PropagatorCheck(PropagatorCheckArgs),
    /// Propagate a sharp-onset signal and fit front and peak velocities.
    #[command(args_override_self = true)]
    FrontSpeed(FrontSpeedArgs),
    /// Check J0, J1, K0, K1 against the reference table.
    #[command(args_override_self = true)]
    SpecfunTest(SpecfunTestArgs),
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Self::Dispersion(a) => &a.output,
            Self::ModeField(a) => &a.output,
            Self::PropagatorCheck(a) => &a.output,
            Self::FrontSpeed(a) => &a.output,
            Self::SpecfunTest(a) => &a.output,
        }
    }
}

pub fn run(cmd: &Command) -> CliResult<Run> {
    match cmd {
        Command::Dispersion(a) => dispersion::run(a),
        Command::ModeField(a) => mode_field::run(a),
        Command::PropagatorCheck(a) => propagator_check::run(a),
        Command::FrontSpeed(a) => front_speed::run(a),
        Command::SpecfunTest(a) => specfun_test::run(a),
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Directory receiving the report files.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// `key = value` file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PhysicsArgs {
    /// Compton wavenumber m c / hbar.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    /// Light speed.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

impl PhysicsArgs {
    pub fn params(&self) -> CliResult<kgwave::Params> {
        Ok(kgwave::domain::Params::with_light_speed(self.mu, self.c)?)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Bessel beam `J0(Q rho)`.
    Sub,
    /// `K0(q rho)` mode.
    Super,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

pub fn mode_spec(family: Family, q: f64, kz: f64, params: kgwave::Params) -> kgwave::Result<kgwave::ModeSpec> {
    match family {
        Family::Sub => kgwave::ModeSpec::subluminal(q, kz, params),
        Family::Super => kgwave::ModeSpec::superluminal(q, kz, params),
    }
}

pub fn require(ok: bool, what: impl FnOnce() -> String) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Precondition(what()))
    }
}
