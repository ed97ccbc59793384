//! `zitter`: scenario runner for the dark-state Zitterbewegung simulator.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod builtin;
mod config;
mod output;
mod run;
mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("precondition violated in {module}: {source}{hint}")]
    Precondition {
        module: &'static str,
        source: zitter::Error,
        hint: &'static str,
    },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

impl CliError {
    pub fn precondition(module: &'static str, source: zitter::Error) -> Self {
        let hint = match source {
            zitter::Error::Resolution { .. } => " (raise grid.n or lower time.tau_max)",
            zitter::Error::Truncation { .. } => " (widen grid.k_min/grid.k_max)",
            _ => "",
        };
        CliError::Precondition { module, source, hint }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn csv(path: &Path, source: csv::Error) -> Self {
        CliError::Csv {
            path: path.to_path_buf(),
            source,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Precondition { .. } => 2,
            CliError::Io { .. } | CliError::Csv { .. } => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "zitter", version, about = "Zitterbewegung of dark-state atoms under tripod gauge potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its data files.
    Evolve(Common),
    /// Full-vs-Dirac density residuals over a ladder of packet widths.
    Compare(Common),
    /// Tabulate the closed-form drift, oscillation and population formulas.
    Analytic(Common),
    /// Report laboratory time, length and frequency scales.
    Scales(Common),
    /// Run the quick invariant suite.
    Selftest,
    /// List the builtin scenarios.
    List,
}

#[derive(Args)]
struct Common {
    /// TOML scenario file, merged over the builtin scenario if both are given.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Builtin scenario name (see `zitter list`).
    #[arg(long)]
    scenario: Option<String>,
    /// Output directory; overrides output.dir.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of momentum nodes; shorthand for --set grid.n=N.
    #[arg(long)]
    grid_n: Option<usize>,
    /// Override a config key, e.g. --set state.delta=0.05.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl Common {
    fn resolve(&self) -> Result<(config::Resolved, PathBuf), CliError> {
        let cfg = config::load(&config::Sources {
            scenario: self.scenario.as_deref(),
            file: self.config.as_deref(),
            overrides: &self.overrides,
            grid_n: self.grid_n,
        })?;
        let out = self
            .out
            .clone()
            .or_else(|| cfg.output.dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"));
        Ok((cfg.resolve()?, out))
    }
}

fn finish(result: Result<bool, CliError>) -> ExitCode {
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("tolerance check failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evolve(c) => c.resolve().and_then(|(r, out)| run::evolve(&r, &out)),
        Command::Compare(c) => c.resolve().and_then(|(r, out)| run::compare(&r, &out)),
        Command::Analytic(c) => c.resolve().and_then(|(r, out)| run::analytic(&r, &out).map(|_| true)),
        Command::Scales(c) => c.resolve().and_then(|(r, out)| run::scales(&r, &out).map(|_| true)),
        Command::Selftest => Ok(selftest::run()),
        Command::List => {
            for name in builtin::names() {
                println!("{name}");
            }
            Ok(true)
        }
    };
    finish(result)
}
