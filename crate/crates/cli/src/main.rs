//! `aging-lab`: theory tables, simulations, comparisons and figure bundles
//! for aged occupation-time statistics.

mod commands;
mod config;
mod error;
mod manifest;
mod reproduce;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "aging-lab",
    version,
    about = "Aged arcsine laws: theory, simulation and comparison"
)]
pub struct Cli {
    /// Master seed for simulations.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output file (theory, simulate, compare) or directory (reproduce).
    #[arg(long, global = true)]
    pub out: Option<String>,

    /// Worker threads; defaults to the machine's parallelism. Does not affect output.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Settings file with `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a theoretical law: s, pdf, cdf plus atom masses.
    Theory(TheoryArgs),
    /// Sample occupation fractions from a model.
    Simulate(SimulateArgs),
    /// KS and atom-mass comparison of a samples file against a law.
    Compare(CompareArgs),
    /// Regenerate a figure bundle from its preset.
    Reproduce(ReproduceArgs),
    /// Re-run a command recorded in a manifest.
    Rerun(RerunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryModel {
    Arcsine,
    Lamperti,
    AgingArcsine,
    AgingLamperti,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimModel {
    Bm,
    Renewal,
    Map,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig2,
    Fig3a,
    Fig3b,
}

macro_rules! value_enum_text {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = self.to_possible_value().expect("no skipped variants");
                f.write_str(v.get_name())
            }
        }

        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                <$t as ValueEnum>::from_str(s, false)
            }
        }
    )*};
}

value_enum_text!(TheoryModel, SimModel, Figure);

#[derive(Debug, Clone, Default, Args)]
pub struct LawArgs {
    /// Tail index, 0 < alpha < 1.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Asymmetry ratio beta > 0.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Probability of the + state, 1 / (1 + beta).
    #[arg(long = "p-plus")]
    pub p_plus: Option<f64>,
    /// Aging ratio t_a / t_m.
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    pub model: Option<TheoryModel>,
    #[command(flatten)]
    pub law: LawArgs,
    /// Number of rows on the uniform grid over [0, 1].
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub model: Option<SimModel>,
    /// Measurement time t_m.
    #[arg(long)]
    pub tm: Option<f64>,
    /// Aging ratio t_a / t_m.
    #[arg(long)]
    pub r: Option<f64>,
    /// Number of trajectories.
    #[arg(long)]
    pub n: Option<usize>,
    /// Tail index (renewal, map).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Branch point of the map.
    #[arg(long)]
    pub c: Option<f64>,
    /// Pareto scale of + sojourns (renewal).
    #[arg(long = "tau-plus")]
    pub tau_plus: Option<f64>,
    /// Pareto scale of - sojourns (renewal).
    #[arg(long = "tau-minus")]
    pub tau_minus: Option<f64>,
    /// Time steps resolving the measurement window (bm).
    #[arg(long = "window-steps")]
    pub window_steps: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub model: Option<TheoryModel>,
    #[command(flatten)]
    pub law: LawArgs,
    /// Samples CSV written by `simulate`.
    #[arg(long)]
    pub samples: Option<String>,
    /// DKW confidence level delta.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Allowance added to the DKW band (defaults to 0.01 for bm samples, else 0).
    #[arg(long)]
    pub allowance: Option<f64>,
    /// Samples within this distance of 0 or 1 count as atoms.
    #[arg(long = "atom-tol")]
    pub atom_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub figure: Figure,
    /// Override the preset's trajectory count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Override the preset's measurement time.
    #[arg(long)]
    pub tm: Option<f64>,
    /// Override the preset's aging ratios (comma separated).
    #[arg(long)]
    pub r: Option<String>,
    /// Histogram bins.
    #[arg(long)]
    pub bins: Option<usize>,
    /// Theory grid rows.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Override the preset's tail index (map figures).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Override the preset's branch point (map figures).
    #[arg(long)]
    pub c: Option<f64>,
    /// Override the preset's window resolution (Brownian figure).
    #[arg(long = "window-steps")]
    pub window_steps: Option<u64>,
    /// Allowance added to the DKW band in the reports.
    #[arg(long)]
    pub allowance: Option<f64>,
    /// DKW confidence level delta.
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RerunArgs {
    /// Manifest JSON written by an earlier run.
    pub manifest: PathBuf,
}

/// Settings shared by every subcommand.
pub struct Context {
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub workers: usize,
    pub file: BTreeMap<String, String>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => config::load_settings(path)?,
        None => BTreeMap::new(),
    };
    let mut file = file;
    let workers = match (cli.workers, file.remove("workers")) {
        (Some(w), _) => w,
        (None, Some(text)) => text
            .parse()
            .map_err(|e| CliError::Usage(format!("invalid value `{text}` for `workers`: {e}")))?,
        (None, None) => default_workers(),
    };
    if workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let ctx = Context {
        seed: cli.seed,
        out: cli.out,
        workers,
        file,
    };
    match cli.command {
        Command::Theory(a) => commands::theory(&a, ctx),
        Command::Simulate(a) => commands::simulate(&a, ctx),
        Command::Compare(a) => commands::compare(&a, ctx),
        Command::Reproduce(a) => reproduce::reproduce(&a, ctx),
        Command::Rerun(a) => commands::rerun(&a, ctx),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
