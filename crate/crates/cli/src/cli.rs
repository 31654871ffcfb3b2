use std::path::PathBuf;

use cdss::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Capacity and storage/bandwidth tradeoffs of clustered distributed storage.
///
/// Numbers accept integers, decimals (`1.05`) and fractions (`3/7`); all
/// arithmetic is exact. `--config FILE` reads `key = value` lines whose keys
/// are long flag names; flags on the command line take precedence.
#[derive(Debug, Parser)]
#[command(name = "cdss", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Capacity with its per-term breakdown.
    Capacity(CapacityArgs),
    /// Capacity at evenly spaced epsilon in [0, 1].
    SweepEps(SweepEpsArgs),
    /// Capacity for every valid number of clusters.
    SweepL(SweepLArgs),
    /// Least total repair bandwidth as a function of storage.
    Tradeoff(TradeoffArgs),
    /// Least cross-cluster bandwidth when intra-cluster helpers send alpha.
    BetacCurve(BetacArgs),
    /// Minimum-storage and minimum-bandwidth points.
    MsrMbr(MsrMbrArgs),
    /// Locality/distance bound for intra-cluster repairable codes.
    LrcCheck(LrcArgs),
    /// Cross-check the closed form against independent oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct System {
    #[arg(short = 'n', long = "nodes")]
    pub n: u32,
    #[arg(short = 'k', long = "contacted")]
    pub k: u32,
    #[arg(short = 'L', long = "clusters")]
    pub clusters: u32,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub system: System,
    #[arg(long)]
    pub alpha: Rational,
    #[arg(long = "beta-i", requires = "beta_c", conflicts_with_all = ["gamma", "epsilon"])]
    pub beta_i: Option<Rational>,
    #[arg(long = "beta-c", requires = "beta_i")]
    pub beta_c: Option<Rational>,
    #[arg(long, requires = "epsilon")]
    pub gamma: Option<Rational>,
    #[arg(long, requires = "gamma")]
    pub epsilon: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct SweepEpsArgs {
    #[arg(short = 'n', long = "nodes", default_value = "100")]
    pub n: u32,
    #[arg(short = 'k', long = "contacted", default_value = "85")]
    pub k: u32,
    #[arg(short = 'L', long = "clusters", default_value = "10")]
    pub clusters: u32,
    #[arg(long, default_value = "1")]
    pub alpha: Rational,
    #[arg(long, default_value = "1")]
    pub gamma: Rational,
    #[arg(long, default_value_t = 101)]
    pub steps: u32,
}

#[derive(Debug, Args)]
pub struct SweepLArgs {
    #[arg(short = 'n', long = "nodes", default_value = "100")]
    pub n: u32,
    #[arg(short = 'k', long = "contacted", default_value = "80")]
    pub k: u32,
    #[arg(long, default_value = "1")]
    pub alpha: Rational,
    #[arg(long, default_value = "10")]
    pub gamma: Rational,
    /// Cross-cluster share of the repair bandwidth.
    #[arg(long, default_value = "1/5", conflicts_with = "uniform")]
    pub xi: Rational,
    /// Use equal per-helper bandwidth inside and across clusters.
    #[arg(long)]
    pub uniform: bool,
}

#[derive(Debug, Args)]
pub struct TradeoffArgs {
    #[command(flatten)]
    pub system: System,
    #[arg(short = 'M', long = "file-size")]
    pub file_size: Rational,
    #[arg(long)]
    pub epsilon: Rational,
    #[arg(long, default_value_t = 200)]
    pub samples: u32,
}

#[derive(Debug, Args)]
pub struct BetacArgs {
    #[command(flatten)]
    pub system: System,
    #[arg(short = 'M', long = "file-size")]
    pub file_size: Rational,
    /// Evaluate only at these storage values.
    #[arg(long)]
    pub alpha: Vec<Rational>,
    #[arg(long, default_value_t = 200)]
    pub samples: u32,
}

#[derive(Debug, Args)]
pub struct MsrMbrArgs {
    #[command(flatten)]
    pub system: System,
    #[arg(short = 'M', long = "file-size")]
    pub file_size: Rational,
    /// Defaults to 0 and 1.
    #[arg(long)]
    pub epsilon: Vec<Rational>,
}

#[derive(Debug, Args)]
pub struct LrcArgs {
    #[command(flatten)]
    pub system: System,
    #[arg(short = 'M', long = "file-size")]
    pub file_size: Rational,
    /// Defaults to the least storage that allows zero cross-cluster traffic.
    #[arg(long)]
    pub alpha: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Flowgraph,
    Rlnc,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    pub suite: Suite,
    /// Largest node count in the grid (node counts 4, 6, 8, 9, 10, 12).
    #[arg(long, default_value_t = 12)]
    pub max_n: u32,
    #[arg(long, default_value_t = 9)]
    pub max_k: u32,
    /// Random histories per configuration for the cut-bound check.
    #[arg(long, default_value_t = 50)]
    pub histories: usize,
    /// Largest node count for the random-history check.
    #[arg(long, default_value_t = 9)]
    pub history_max_n: u32,
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    /// Full-rank successes required out of `--trials`.
    #[arg(long, default_value_t = 9)]
    pub required: u64,
    #[arg(long, default_value_t = 16)]
    pub field_bits: u32,
    /// Write a text dump of each capacity-attaining graph into this directory.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}
