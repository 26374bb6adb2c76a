use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dagembed::{EmbedConfig, Mode, PartitionKind};

mod commands;
mod output;

/// Sample stochastic embeddings of weighted digraphs into pairs of DAGs,
/// build DAG covers, and verify their guarantees.
///
/// Exit codes: 0 ok, 1 usage or I/O error, 2 verification failure.
#[derive(Debug, Parser)]
#[command(name = "dagembed", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Cycle,
    Er,
    Layered,
    Torus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightArg {
    Unit,
    Uniform,
    /// Log-uniform over [1, max-weight].
    Spread,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Fast,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PartitionArg {
    Strict,
    Soft,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    /// Exact: recomputed diameters and d_G weights. Fast: passed-down
    /// diameters, surrogate weights, per-cluster spanners.
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Center selection rule of the partition step.
    #[arg(long, value_enum, default_value = "strict")]
    pub partition: PartitionArg,
    /// Zero out edges lighter than Δ/n⁷ inside each partition call.
    #[arg(long)]
    pub round_weights: bool,
    /// Random seed (required; nothing is seeded from the clock).
    #[arg(long)]
    pub seed: u64,
}

impl EmbedArgs {
    pub fn config(&self) -> EmbedConfig {
        EmbedConfig {
            mode: match self.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Fast => Mode::Fast,
            },
            partition: match self.partition {
                PartitionArg::Strict => PartitionKind::Strict,
                PartitionArg::Soft => PartitionKind::Soft,
            },
            weight_rounding: self.round_weights,
            ..EmbedConfig::with_seed(self.seed)
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Generate a seeded synthetic digraph in edge-list format.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Vertex count (cycle, er, layered).
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability (er).
        #[arg(long)]
        p: Option<f64>,
        /// Torus rows.
        #[arg(long)]
        rows: Option<usize>,
        /// Torus columns.
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, value_enum, default_value = "unit")]
        weights: WeightArg,
        /// Largest weight for uniform and spread weights.
        #[arg(long, default_value_t = 16.0)]
        max_weight: f64,
        #[arg(long)]
        seed: u64,
        /// Output graph file; a manifest is written next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample one DAG pair. Writes d1.txt, d2.txt, pair.json, order.txt,
    /// cut.txt and manifest.json into the output directory.
    Sample {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Build a DAG cover from k independent samples (2k DAGs).
    Cover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Check a DAG pair against its graph and order. Violations are printed
    /// as JSON lines and the exit code is 2.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        d1: PathBuf,
        #[arg(long)]
        d2: PathBuf,
        #[arg(long)]
        order: PathBuf,
        /// Cut set file; when given, the laminar order is validated too.
        #[arg(long)]
        cut: Option<PathBuf>,
        /// Fast mode bounds distances by the stored cluster diameters.
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Estimate expected stretch over many samples.
    Distortion {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// all, adjacent, reversed, or a file of "s t" lines.
        #[arg(long, default_value = "all")]
        pairs: String,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Emit the 2-hop spanner on n positions, or check an edge list.
    Spanner {
        #[arg(long, conflicts_with = "check", required_unless_present = "check")]
        n: Option<usize>,
        /// Write the spanner here instead of stdout.
        #[arg(long, requires = "n")]
        out: Option<PathBuf>,
        /// Edge-list file to check for the 2-hop property.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Re-run a manifest into a fresh directory and compare output hashes.
    Replay {
        manifest: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(cli.command, argv) {
        Ok(commands::Outcome::Clean) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Violations) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
