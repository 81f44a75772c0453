//! Command-line front end: `evolve`, `analyze`, `exhaust`, `orbits` and `stats`.

mod analyze;
mod evolve;
mod stats;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rsbf::search::{EncodingKind, Engine};
use rsbf::Objective;
use thiserror::Error;

pub use analyze::{analyze_text, InputFormat};
pub use stats::{group_rows, summary_csv, Metric, SummaryRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] rsbf::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "rsbf",
    version,
    about = "Evolve and analyze rotation symmetric Boolean functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    Tt,
    Fp,
    Gp,
}

impl From<EncodingArg> for EncodingKind {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Tt => EncodingKind::Tt,
            EncodingArg::Fp => EncodingKind::Fp,
            EncodingArg::Gp => EncodingKind::Gp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Sst,
    De,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Sst => Engine::Sst,
            EngineArg::De => Engine::De,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Bent,
    Balanced,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Bent => Objective::Bent,
            ObjectiveArg::Balanced => Objective::Balanced,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct EvolveArgs {
    /// Number of input variables.
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "tt")]
    pub encoding: EncodingArg,
    #[arg(long, value_enum, default_value = "sst")]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value = "bent")]
    pub objective: ObjectiveArg,
    /// Independent runs; seeds are `seed`, `seed + 1`, ...
    #[arg(long, default_value_t = 30)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub population: usize,
    /// Fitness evaluations per run, initial population included.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0.5)]
    pub pmut: f64,
    /// Genotype bits per real value (fp encoding).
    #[arg(long, default_value_t = 1)]
    pub decode: usize,
    /// Tree depth limit (gp encoding).
    #[arg(long, default_value_t = 12)]
    pub max_depth: usize,
    /// DE differential weight.
    #[arg(long, default_value_t = 0.5)]
    pub de_f: f64,
    /// DE crossover rate.
    #[arg(long, default_value_t = 0.9)]
    pub de_cr: f64,
    /// Output root; files go to <out>/<n>/<encoding>/<objective>/.
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Suppress per-run progress lines.
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a batch of evolutionary searches.
    Evolve(EvolveArgs),
    /// Print the properties of a truth table or RS genotype file.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
    },
    /// Enumerate every RS function of n variables and report the optima as JSON.
    Exhaust {
        n: usize,
        #[arg(long, default_value_t = rsbf::oracle::DEFAULT_LIMIT)]
        limit: u64,
    },
    /// Dump the rotation orbits of n variables as CSV.
    Orbits { n: usize },
    /// Aggregate run-result JSON files into box-plot statistics.
    Stats {
        /// Result files or directories to scan for *.json.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "nl")]
        metric: Metric,
    },
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Evolve(args) => evolve::cmd_evolve(&args, out, err),
        Command::Analyze { path, format } => analyze::cmd_analyze(&path, format, out),
        Command::Exhaust { n, limit } => {
            let report = rsbf::oracle::exhaust_rs(n, limit)?;
            let json = serde_json::to_string_pretty(&report).expect("serializable report");
            writeln!(out, "{json}").map_err(|e| CliError::io("<stdout>", e))
        }
        Command::Orbits { n } => cmd_orbits(n, out),
        Command::Stats { paths, metric } => stats::cmd_stats(&paths, metric, out, err),
    }
}

fn cmd_orbits(n: usize, out: &mut dyn Write) -> CliResult<()> {
    let ot = rsbf::OrbitTable::new(n)?;
    let mut text = String::from("orbit,representative,bits,size\n");
    for (j, (&r, &s)) in ot.representatives().iter().zip(ot.sizes()).enumerate() {
        text.push_str(&format!("{j},{r},{r:0n$b},{s}\n"));
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}
