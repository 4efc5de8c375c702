use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use ftspanner_core::lowerbound::EftVariant;
use ftspanner_core::verifier::DEFAULT_WORK_CAP;
use ftspanner_core::FaultMode;
use serde::Serialize;

/// Every run is described by one `RunConfig`; reports embed it verbatim.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "ftspanner", version, about = "Greedy fault-tolerant graph spanners")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker thread cap (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every randomized step of the run.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest `fault sets x pairs` product the exhaustive verifier accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_CAP)]
    pub work_cap: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weights {
    /// Every edge has weight 1.
    Unit,
    /// Weights uniform in [1, 2).
    Uniform,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpannerArgs {
    /// Stretch parameter; the spanner has stretch 2k - 1.
    #[arg(long)]
    pub k: usize,
    /// Fault budget.
    #[arg(long, default_value_t = 0)]
    pub f: usize,
    /// Fault mode: vertex or edge.
    #[arg(long, default_value = "vertex", value_parser = str::parse::<FaultMode>)]
    pub mode: FaultMode,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Build a greedy fault-tolerant spanner.
    Build {
        /// Input graph (edge-list format).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        #[serde(flatten)]
        params: SpannerArgs,
        /// Also write the spanner as an edge list.
        #[arg(long)]
        spanner_out: Option<PathBuf>,
        /// Leave the per-edge trace out of the report.
        #[arg(long)]
        no_trace: bool,
    },
    /// Check that a subgraph is a fault-tolerant spanner.
    #[command(group(ArgGroup::new("method").required(true).args(["exhaustive", "per_edge", "replay"])))]
    Verify {
        /// Original graph.
        #[arg(long)]
        input: PathBuf,
        /// Candidate spanner (edge list); required for --exhaustive and --per-edge.
        #[arg(long)]
        spanner: Option<PathBuf>,
        #[command(flatten)]
        #[serde(flatten)]
        params: SpannerArgs,
        /// Stretch to check instead of 2k - 1.
        #[arg(long)]
        stretch: Option<f64>,
        /// Enumerate every fault set of size at most f.
        #[arg(long)]
        exhaustive: bool,
        /// Check every missing edge for protection (sound, not complete).
        #[arg(long)]
        per_edge: bool,
        /// Replay the trace in a JSON build report.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Generate a lower-bound blow-up instance and check its criticality.
    Generate {
        #[command(flatten)]
        #[serde(flatten)]
        params: SpannerArgs,
        /// Edge-fault witness family (default: k2 for k <= 2, general otherwise).
        #[arg(long, value_parser = str::parse::<EftVariant>)]
        variant: Option<EftVariant>,
        /// Base graph: a registry name or `projective:Q`.
        #[arg(long)]
        base: Option<String>,
        /// Pick a base graph with about this many nodes instead.
        #[arg(long, conflicts_with = "base")]
        target_n: Option<usize>,
        /// Write the instance (edge list with metadata) here.
        #[arg(long)]
        instance_out: Option<PathBuf>,
        /// Also run the greedy spanner on the instance.
        #[arg(long)]
        greedy: bool,
    },
    /// Walk statistics, blockades, regularization and density of a graph.
    Analyze {
        /// Graph to analyze, usually a spanner.
        #[arg(long)]
        input: PathBuf,
        /// Graph the input was built from, for the density report.
        #[arg(long)]
        original: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        f: usize,
        /// Walk length for pair counts and meets (default: k).
        #[arg(long)]
        walks: Option<usize>,
        /// Extra closed-walk lengths to count.
        #[arg(long, value_delimiter = ',')]
        closed: Vec<usize>,
        /// Build blockades B_2..B_{k-1} before counting walks.
        #[arg(long)]
        blockades: bool,
        /// Blockade fraction (default: (4 psi)^-k).
        #[arg(long)]
        phi: Option<f64>,
        /// Run the degree regularization.
        #[arg(long)]
        regularize: bool,
        /// Regularization constant (default: 12 * 9^k).
        #[arg(long)]
        c: Option<f64>,
    },
    /// Time the greedy construction over a sweep of fault budgets.
    Bench {
        /// Input graph; a seeded G(n, p) is generated when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 150)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Weights::Uniform)]
        weights: Weights,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "vertex", value_parser = str::parse::<FaultMode>)]
        mode: FaultMode,
        /// Fault budgets to sweep.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 4, 16])]
        fs: Vec<usize>,
        /// Omit wall-clock timings so reports are reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Verify { .. } => "verify",
            Command::Generate { .. } => "generate",
            Command::Analyze { .. } => "analyze",
            Command::Bench { .. } => "bench",
        }
    }
}
