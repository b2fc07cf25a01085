//! Command-line front end: pricing runs, convergence tables, gate-count
//! audits, circuit dumps.  Everything lands in deterministic CSV or the
//! circuit dump format.

mod commands;
mod config;
mod csvfmt;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::dump::DumpTarget;
use config::{ProblemKind, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Fd(#[from] schrobs_fdgrid::FdError),
    #[error(transparent)]
    Schro(#[from] schrobs_schro::SchroError),
    #[error(transparent)]
    Circuit(#[from] schrobs_circuits::CircuitError),
    #[error(transparent)]
    Sim(#[from] schrobs_simulator::SimError),
    #[error(transparent)]
    Pricing(#[from] schrobs_pricing::PricingError),
    #[error(transparent)]
    Linalg(#[from] schrobs_linalg::LinalgError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser)]
#[command(name = "schrobs", about = "Black-Scholes solvers built on the Schrödingerisation pipeline", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Problem family.
    #[arg(long, value_parser = ["bs1d", "bs2d"], default_value = "bs1d")]
    problem: String,
    /// Optional key=value configuration file (flags override it).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Individual overrides, repeatable: --set nx=5 --set sigma=0.25
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Price an option and compare against the references.
    Price(CommonOpts),
    /// Paired-refinement convergence table.
    Convergence {
        #[command(flatten)]
        common: CommonOpts,
        /// Coarsest grid register size.
        #[arg(long, default_value_t = 6)]
        nx0: usize,
        /// Coarsest auxiliary register size.
        #[arg(long, default_value_t = 7)]
        np0: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    /// Audit synthesised gate counts against the closed-form tallies.
    Gatecount {
        #[arg(long, default_value_t = 3)]
        nx_min: usize,
        #[arg(long, default_value_t = 8)]
        nx_max: usize,
        #[arg(long, default_value_t = 1)]
        np_min: usize,
        #[arg(long, default_value_t = 4)]
        np_max: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Write a circuit in the line dump format.
    DumpCircuit {
        #[command(flatten)]
        common: CommonOpts,
        /// Which block to dump.
        #[arg(long, value_parser = ["vbs", "tilde-v1", "tilde-v2", "qft", "iqft"], default_value = "vbs")]
        what: String,
    },
}

fn build_config(common: &CommonOpts) -> Result<RunConfig, CliError> {
    let mut cfg = match common.problem.as_str() {
        "bs1d" => RunConfig::default_1d(),
        "bs2d" => RunConfig::default_2d(),
        other => return Err(CliError::Config(format!("unknown problem `{other}`"))),
    };
    if let Some(path) = &common.config {
        cfg.apply_file(path)?;
    }
    for s in &common.sets {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects KEY=VALUE, got `{s}`")))?;
        cfg.apply_entry(k.trim(), v.trim())?;
    }
    // Problem choice from the file must not silently fight the flag.
    let want = match common.problem.as_str() {
        "bs1d" => ProblemKind::Bs1d,
        _ => ProblemKind::Bs2d,
    };
    if cfg.problem != want {
        return Err(CliError::Config(
            "problem in config file conflicts with --problem".into(),
        ));
    }
    Ok(cfg)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run() -> Result<bool, CliError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Price(common) => {
            let cfg = build_config(common)?;
            let csv = commands::price::run(&cfg)?;
            emit(&common.out, &csv)?;
            Ok(true)
        }
        Command::Convergence { common, nx0, np0, levels } => {
            let mut cfg = build_config(common)?;
            // Table defaults: short horizon, dense engine.
            cfg.t = 0.1;
            cfg.engine = schrobs_simulator::Engine::DenseOracle;
            if let Some(path) = &common.config {
                cfg.apply_file(path)?;
            }
            for s in &common.sets {
                let (k, v) = s.split_once('=').unwrap();
                cfg.apply_entry(k.trim(), v.trim())?;
            }
            let spec = commands::convergence::ConvergenceSpec {
                n_x0: *nx0,
                n_p0: *np0,
                levels: *levels,
            };
            let csv = commands::convergence::run(&cfg, &spec)?;
            emit(&common.out, &csv)?;
            Ok(true)
        }
        Command::Gatecount { nx_min, nx_max, np_min, np_max, out } => {
            let spec = commands::gatecount::GateCountSpec {
                n_x_range: (*nx_min, *nx_max),
                n_p_range: (*np_min, *np_max),
            };
            let (csv, ok) = commands::gatecount::run(&spec)?;
            emit(out, &csv)?;
            if !ok {
                eprintln!("gate-count audit mismatch");
            }
            Ok(ok)
        }
        Command::DumpCircuit { common, what } => {
            let cfg = build_config(common)?;
            let target = match what.as_str() {
                "vbs" => DumpTarget::Vbs,
                "tilde-v1" => DumpTarget::TildeV1,
                "tilde-v2" => DumpTarget::TildeV2,
                "qft" => DumpTarget::Qft,
                _ => DumpTarget::Iqft,
            };
            let text = commands::dump::run(&cfg, target)?;
            emit(&common.out, &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
