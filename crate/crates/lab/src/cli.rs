//! Subcommands of the `awlab` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use awlab_core::verify::estimate_order;
use clap::{Parser, Subcommand};

use crate::config::parse_config;
use crate::error::LabError;
use crate::output::{fixed, summary_text, table_csv, write_artifacts};
use crate::runner::{run_scenario, Resolved};

#[derive(Debug, Parser)]
#[command(name = "awlab", version, about = "Askey-Wilson operator and Nevanlinna growth scenarios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a scenario, listing every violation.
    Validate { config: PathBuf },
    /// Run a scenario and write CSV tables, verdicts.json and summary.txt.
    Run {
        config: PathBuf,
        /// Output directory; overrides `output` in the scenario.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; overrides `workers` in the scenario.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print the Nevanlinna table of one function as CSV.
    Table {
        config: PathBuf,
        #[arg(long)]
        function: String,
    },
    /// Print the phi-order estimate of one function.
    Order {
        config: PathBuf,
        #[arg(long)]
        function: String,
        #[arg(long)]
        phi: String,
    },
}

/// Default output directory when neither `--out` nor `output` is given.
pub const DEFAULT_OUT: &str = "awlab-out";

fn load(path: &Path) -> Result<Resolved, LabError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Io { context: format!("reading {}", path.display()), source: e })?;
    Resolved::new(parse_config(&text)?)
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs a subcommand, writing its stdout to `out`. Returns the exit code:
/// 0 success, 1 a verdict failed, 2 invalid input or a job error.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> i32 {
    match try_execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn try_execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, LabError> {
    let io = |e: std::io::Error| LabError::Io { context: "writing stdout".into(), source: e };
    match &cli.command {
        Command::Validate { config } => {
            let r = load(config)?;
            writeln!(
                out,
                "ok: {} functions, {} checks",
                r.config.functions.len(),
                r.config.checks.len()
            )
            .map_err(io)?;
            Ok(0)
        }
        Command::Run { config, out: dir, workers } => {
            let r = load(config)?;
            let dir = dir.clone().or_else(|| r.config.output.as_ref().map(PathBuf::from)).unwrap_or(DEFAULT_OUT.into());
            let workers = workers.or(r.config.workers).unwrap_or_else(default_workers);
            let report = run_scenario(&r, workers);
            write_artifacts(&report, &dir)?;
            out.write_all(summary_text(&report).as_bytes()).map_err(io)?;
            for (o, v) in report.verdicts().filter(|(_, v)| !v.holds) {
                eprintln!("failed: {}/{}", o.id, v.name);
            }
            Ok(report.exit_code())
        }
        Command::Table { config, function } => {
            let r = load(config)?;
            let t = r.table(function)?;
            out.write_all(table_csv(&t).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Order { config, function, phi } => {
            let r = load(config)?;
            let est = estimate_order(r.function(function)?, r.phi_fn(phi)?)?;
            writeln!(out, "{}", fixed(est.estimate).unwrap_or_else(|| format!("{}", est.estimate))).map_err(io)?;
            Ok(0)
        }
    }
}
