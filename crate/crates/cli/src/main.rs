//! `witness-lab`: spectra, entanglement witnesses and path certification
//! for transverse-field Ising systems described in a JSON config.
//!
//! Exit codes: 0 success or certified, 1 no certification, 2 invalid input,
//! 3 degenerate ground state, 4 numerical or I/O failure.

mod commands;
mod config;
mod csv;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::error::CliError;

const THREADS_VAR: &str = "WITNESS_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "witness-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues of the configured system.
    Spectrum(RunArgs),
    /// Per-cut and global susceptibility witnesses of the ground state.
    Witness(RunArgs),
    /// Energies, gap and `<σz>` along the configured path.
    Sweep(RunArgs),
    /// Certify ground-state entanglement along the configured path.
    Certify(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of lowest levels to report.
    #[arg(long)]
    levels: Option<usize>,
    /// Ground-state degeneracy tolerance.
    #[arg(long)]
    deg_tol: Option<f64>,
    /// Total-variation threshold for certification.
    #[arg(long)]
    var_tol: Option<f64>,
    /// Finite-difference step for `W_λ`.
    #[arg(long)]
    fd_step: Option<f64>,
    /// Require a nondegenerate ground state and print the gap.
    #[arg(long)]
    ground: bool,
    /// Write the effective configuration, overrides applied, as JSON.
    #[arg(long, value_name = "FILE")]
    echo_config: Option<PathBuf>,
}

impl RunArgs {
    fn load(&self) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(&self.config)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", self.config.display())))?;
        let mut config = RunConfig::parse(&text)?;
        let o = &mut config.options;
        o.levels = self.levels.or(o.levels);
        o.deg_tol = self.deg_tol.or(o.deg_tol);
        o.var_tol = self.var_tol.or(o.var_tol);
        o.fd_step = self.fd_step.or(o.fd_step);
        o.ground |= self.ground;
        config.validate()?;
        Ok(config)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads = value
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Input(format!(
                "{THREADS_VAR} must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Input(format!("{THREADS_VAR}: {e}")))
}

type Handler = fn(&RunConfig) -> Result<commands::Output, CliError>;

fn run(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let (args, command): (&RunArgs, Handler) = match &cli.command {
        Command::Spectrum(a) => (a, commands::spectrum),
        Command::Witness(a) => (a, commands::witness),
        Command::Sweep(a) => (a, commands::sweep),
        Command::Certify(a) => (a, commands::certify),
    };
    let config = args.load()?;
    if let Some(path) = &args.echo_config {
        std::fs::write(path, config.to_json() + "\n")?;
    }
    let output = command(&config)?;
    match &args.out {
        Some(path) => std::fs::write(path, &output.table)?,
        None => std::io::stdout()
            .lock()
            .write_all(output.table.as_bytes())?,
    }
    let mut stderr = std::io::stderr().lock();
    for note in &output.notes {
        writeln!(stderr, "{note}")?;
    }
    Ok(output.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("witness-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
