mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use matrixless::{Error, ErrorKind};

use config::{ConfigArgs, RunConfig};

/// Matrix-less eigenvalue approximation for preconditioned Toeplitz matrices.
#[derive(Debug, Parser)]
#[command(name = "matrixless", version)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that g > 0 and f = l/g is increasing; print the range of f.
    Certify,
    /// Build and save an expansion table.
    Precompute,
    /// Approximate all n eigenvalues at level k from a saved table.
    Approx {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Compare approximations with reference spectra over orders x levels.
    Errors,
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Hypothesis => 2,
        ErrorKind::Numerical => 3,
        ErrorKind::Io => 4,
    }
}

fn run(cli: Cli) -> matrixless::Result<()> {
    let config = RunConfig::resolve(&cli.config)?;
    if let Some(jobs) = config.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    }
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Certify => commands::certify(&config, &mut stdout),
        Command::Precompute => commands::precompute_table(&config).map(|_| ()),
        Command::Approx { n, k } => commands::approx(&config, n, k, &mut stdout),
        Command::Errors => commands::errors(&config, &mut stdout),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
