//! `pgrowth`: plane generation and checking, growth runs, surveys, and the
//! Desargues and bracket-set experiments.
//!
//! Exit status: 0 on success, 1 when a check fails (axioms, Desargues,
//! bracket inequality), 2 on bad input or configuration, 3 when a survey
//! meets a set that escapes the growth trichotomy.

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{CliError, Format, Output};

#[derive(Debug, Parser)]
#[command(
    name = "pgrowth",
    version,
    about = "Growth experiments in finite projective planes"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every random draw.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 lets the runtime decide). Never changes results.
    #[arg(long, global = true, env = "PGROWTH_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate or check plane files.
    Plane {
        #[command(subcommand)]
        action: PlaneAction,
    },
    /// Run the growth iteration from an explicit point set.
    Grow(commands::grow::GrowArgs),
    /// Classify a point set against the growth trichotomy.
    Classify(commands::grow::ClassifyArgs),
    /// Classify many random (or all) point sets of a plane.
    Survey(commands::survey::SurveyArgs),
    /// Check the little Desargues property.
    Desargues(commands::experiments::DesarguesArgs),
    /// Verify the bracket-set triangle inequality on random configurations.
    Ruzsa(commands::experiments::RuzsaArgs),
}

#[derive(Debug, Subcommand)]
enum PlaneAction {
    /// Write PG(2,q) as a plane file.
    Gen(commands::plane::GenArgs),
    /// Verify the plane axioms for a file and print its counting statistics.
    Check(commands::plane::CheckArgs),
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Plane {
            action: PlaneAction::Gen(a),
        } => commands::plane::generate(a, g),
        Command::Plane {
            action: PlaneAction::Check(a),
        } => commands::plane::check(a, g),
        Command::Grow(a) => commands::grow::grow(a, g),
        Command::Classify(a) => commands::grow::classify(a, g),
        Command::Survey(a) => commands::survey::survey(a, g),
        Command::Desargues(a) => commands::experiments::desargues(a, g),
        Command::Ruzsa(a) => commands::experiments::ruzsa(a, g),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    match run(cli).and_then(|o| o.emit(out.as_deref())) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
