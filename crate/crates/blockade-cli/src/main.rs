//! Parameter-sweep front end for the three-body photon-blockade simulator.
//!
//! Subcommands emit deterministic CSV: a `#` comment header that fully
//! records the run settings, one header row, data rows in grid order, and
//! a status column. Exit codes: 0 success, 1 configuration error, 2 solver
//! failure in at least one row, 3 I/O error.

// NaN-rejecting validation, as in the library.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod csvout;
mod grid;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use config::Config;
use csvout::CsvDoc;

/// Environment variable supplying the default worker count.
const WORKERS_ENV: &str = "BLOCKADE_WORKERS";

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "blockade",
    version,
    about = "Steady-state photon statistics of three-body and Jaynes-Cummings blockade models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One- or two-axis parameter sweep of a single model
    Sweep(RunArgs),
    /// Compare brightness and purity of the three mechanisms over kappa/J
    Compare(RunArgs),
    /// Time-delayed g2(t) traces for the three mechanisms
    G2tau(RunArgs),
    /// g2(0) versus thermal occupation, with threshold crossings
    Thermal(RunArgs),
    /// Coupler strengths J, g1, g2 versus external flux
    Circuit(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Key-value configuration file (defaults apply when omitted)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override a config key, e.g. --set tpb.coupling=0.2 (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Grid worker threads (default: $BLOCKADE_WORKERS or 1)
    #[arg(long)]
    workers: Option<usize>,
}

fn load_config(args: &RunArgs) -> Result<Config, CliError> {
    let mut cfg = match &args.config {
        Some(path) => Config::from_file(path)?,
        None => Config::empty(),
    };
    for entry in &args.set {
        cfg.apply_set(entry)?;
    }
    Ok(cfg)
}

fn worker_count(args: &RunArgs) -> usize {
    args.workers
        .or_else(|| {
            std::env::var(WORKERS_ENV)
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
        })
        .unwrap_or(1)
        .max(1)
}

fn write_output(args: &RunArgs, text: &str) -> Result<(), CliError> {
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    let (name, args, doc): (&str, &RunArgs, CsvDoc) = match command {
        Command::Sweep(args) => {
            let cfg = load_config(args)?;
            ("sweep", args, commands::sweep::run(&cfg, worker_count(args))?)
        }
        Command::Compare(args) => {
            let cfg = load_config(args)?;
            ("compare", args, commands::compare::run(&cfg, worker_count(args))?)
        }
        Command::G2tau(args) => {
            let cfg = load_config(args)?;
            ("g2tau", args, commands::g2tau::run(&cfg, worker_count(args))?)
        }
        Command::Thermal(args) => {
            let cfg = load_config(args)?;
            ("thermal", args, commands::thermal::run(&cfg, worker_count(args))?)
        }
        Command::Circuit(args) => {
            let cfg = load_config(args)?;
            ("circuit", args, commands::circuit::run(&cfg, worker_count(args))?)
        }
    };
    let failed = doc.any_row_failed();
    write_output(args, &doc.render(name))?;
    if failed {
        return Err(CliError::Solver(
            "one or more grid rows failed; see the status column".into(),
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                CliError::Config(_) => 1,
                CliError::Solver(_) => 2,
                CliError::Io(_) => 3,
            })
        }
    }
}
