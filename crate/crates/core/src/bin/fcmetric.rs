use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fcmetric::cli::{load_config, run_check, run_solve, summary, ConfigError, Outcome, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "fcmetric",
    version,
    about = "Check controlled F_c-metric spaces and solve for fixed points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print the JSON report on stdout (the summary goes to stderr).
    #[arg(long)]
    json: bool,
    /// Write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom and hypothesis checks named in the config.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Verify the hypotheses, then run the Picard iteration.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Starting point, comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Option<Vec<f64>>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(outcome: &Outcome, output: &Output) -> Result<(), ConfigError> {
    let text = summary(&outcome.report);
    let json = outcome.report.to_json();
    if let Some(path) = &output.out {
        std::fs::write(path, &json).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    }
    if output.json {
        eprint!("{text}");
        print!("{json}");
    } else {
        print!("{text}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, ConfigError> {
    match cli.command {
        Command::Check {
            config,
            seed,
            samples,
            output,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(samples) = samples {
                cfg.n_samples = samples;
            }
            let outcome = run_check(&cfg)?;
            emit(&outcome, &output)?;
            Ok(outcome.exit_code)
        }
        Command::Solve {
            config,
            x0,
            tol,
            output,
        } => {
            let mut cfg = load_config(&config)?;
            if x0.is_some() {
                cfg.x0 = x0;
            }
            if let Some(tol) = tol {
                cfg.tol = tol;
            }
            let outcome = run_solve(&cfg)?;
            emit(&outcome, &output)?;
            Ok(outcome.exit_code)
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    ExitCode::from(code as u8)
}
