mod commands;
mod config;
mod output;
mod range;

use std::process::ExitCode;

use clap::Parser;

use commands::Command;
use output::CliError;

#[derive(Parser)]
#[command(
    name = "kgwave",
    version,
    about = "Klein-Gordon sub- and superluminal modes: dispersion tables, mode fields, propagator checks and signal-front runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("kgwave: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out_dir = cli.command.output().out_dir.clone();

    match commands::run(&cli.command) {
        Ok(run) => {
            if let Err(e) = run.write(&out_dir) {
                eprintln!("kgwave: cannot write reports to {}: {e}", out_dir.display());
                return ExitCode::from(2);
            }
            for c in &run.checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            ExitCode::from(if run.all_passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("kgwave: {e}");
            if let CliError::NonConvergence { diagnostics, .. } = &e {
                let path = out_dir.join("diagnostics.json");
                let text = serde_json::to_string_pretty(diagnostics).unwrap_or_default();
                if let Err(io) = std::fs::create_dir_all(&out_dir).and_then(|_| std::fs::write(&path, text + "\n")) {
                    eprintln!("kgwave: cannot write {}: {io}", path.display());
                } else {
                    eprintln!("kgwave: diagnostics written to {}", path.display());
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
