//! `finsler-nav`: runs scenario files against the finsler-nav engine.
//!
//! Exit status is 0 when every check passes, 1 when a check fails or a
//! trajectory or level set cannot be produced, and 2 on configuration errors.

mod commands;
mod output;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CommandError, Outcome};
use scenario::Scenario;

#[derive(Parser)]
#[command(name = "finsler-nav", version, about = "Verification runs for Finsler and Lorentz-Finsler navigation data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured correspondence checks and write a JSON report.
    Verify(Common),
    /// Integrate the configured geodesics and write their trajectories as CSV.
    Geodesic(Common),
    /// Sample level sets of f and its corresponded function and write them as CSV.
    Levelset(Common),
}

type Run = fn(&Scenario, &std::path::Path) -> Result<Outcome, CommandError>;

#[derive(Args)]
struct Common {
    /// Scenario file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, run): (&Common, Run) = match &cli.command {
        Command::Verify(a) => (a, commands::verify),
        Command::Geodesic(a) => (a, commands::geodesic),
        Command::Levelset(a) => (a, commands::levelset),
    };
    let mut sc = match Scenario::load(&args.config) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(seed) = args.seed {
        sc.seed = seed;
    }
    match run(&sc, &args.out) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(CommandError::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(2)
        }
        Err(CommandError::Io(e)) => {
            eprintln!("output error: {e}");
            ExitCode::from(1)
        }
    }
}
