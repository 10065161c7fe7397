//! `bilap`: coefficient tables, sign charts, integrations, Delaunay orbits,
//! fits and the verification suites, written as CSV or JSON.

mod commands;
mod config;
mod report;

use clap::Parser;
use commands::Failure;
use config::{Cli, Command, CommonArgs, RunConfig};
use std::process::ExitCode;

fn name_of(cmd: &Command) -> (&'static str, &CommonArgs) {
    match cmd {
        Command::Coeffs(c) => ("coeffs", c),
        Command::Signs { common, .. } => ("signs", common),
        Command::Classify(c) => ("classify", c),
        Command::Integrate { common, .. } => ("integrate", common),
        Command::Pohozaev { common, .. } => ("pohozaev", common),
        Command::Shoot { common, .. } => ("shoot", common),
        Command::Fit { common, .. } => ("fit", common),
        Command::Verify(c) => ("verify", c),
    }
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<report::Artifact, Failure> {
    match &cli.command {
        Command::Coeffs(_) => commands::coeffs(cfg),
        Command::Signs { s_grid, .. } => commands::signs(cfg, *s_grid),
        Command::Classify(_) => commands::classify(cfg),
        Command::Integrate {
            init, t0, t_end, ..
        } => commands::integrate_cmd(cfg, init, *t0, *t_end),
        Command::Pohozaev { trials, t_end, .. } => commands::pohozaev(cfg, *trials, *t_end),
        Command::Shoot {
            a, orbit_samples, ..
        } => commands::shoot(cfg, a, *orbit_samples),
        Command::Fit {
            input,
            synthetic,
            model,
            ..
        } => commands::fit(cfg, input.as_deref(), *synthetic, *model),
        Command::Verify(_) => commands::verify_cmd(cfg),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let (name, common) = name_of(&cli.command);
    let cfg = match RunConfig::from_args(name, args, common) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build();
    let outcome = match &pool {
        Ok(p) => p.install(|| run(&cli, &cfg)),
        Err(_) => run(&cli, &cfg),
    };
    match outcome {
        Ok(art) => match report::emit(&art, &cfg) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Reported(art, msg)) => {
            if let Err(e) = report::emit(&art, &cfg) {
                eprintln!("error: {e}");
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
