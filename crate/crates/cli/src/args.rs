use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flowsample::generators::CapacitySpec;
use flowsample::io::OutputFormat;
use flowsample::sampler::DEFAULT_CI_LEVEL;
use flowsample::CiMode;

/// Exact and bootstrap-subsampled maximum flow.
#[derive(Debug, Parser)]
#[command(name = "flowsample", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact maximum flow by Edmonds-Karp.
    Exact(ExactArgs),
    /// Bootstrap subsampling estimate with a confidence interval.
    Estimate(EstimateArgs),
    /// Estimates over a list of bootstrap sample counts.
    SweepB(SweepBArgs),
    /// Estimates over a list of subsampling proportions.
    SweepP(SweepPArgs),
    /// Time the estimator on generated graphs of growing size.
    Bench(BenchArgs),
    /// Write a generated Erdos-Renyi graph as an edge list.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    #[value(name = "edgelist")]
    EdgeList,
    Mtx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum BenchMode {
    /// B = n and subsamples of ceil(sqrt(n)) vertices.
    #[default]
    Scaling,
    /// The given --B and --p for every n.
    Fixed,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Graph file to read.
    #[arg(long, required_unless_present = "er_n", conflicts_with_all = ["er_n", "er_pi", "er_cap"])]
    pub input: Option<PathBuf>,

    /// File format; inferred from the extension when omitted.
    #[arg(long, value_enum, requires = "input")]
    pub format: Option<FileFormat>,

    /// Read each line as one directed arc (default).
    #[arg(long, conflicts_with = "undirected")]
    pub directed: bool,

    /// Read each line as a pair of opposite arcs.
    #[arg(long)]
    pub undirected: bool,

    /// Generate an Erdos-Renyi graph on this many vertices.
    #[arg(long, requires = "er_pi")]
    pub er_n: Option<usize>,

    /// Edge probability of the generated graph.
    #[arg(long, requires = "er_n")]
    pub er_pi: Option<f64>,

    /// Capacities of generated edges: unit, const:C or unif:LO,HI.
    #[arg(long)]
    pub er_cap: Option<CapacitySpec>,

    /// Source vertex label; picked at random from the seed when omitted.
    #[arg(long, requires = "sink")]
    pub source: Option<String>,

    /// Sink vertex label.
    #[arg(long, requires = "source")]
    pub sink: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CiArgs {
    #[arg(long, default_value_t = DEFAULT_CI_LEVEL)]
    pub ci_level: f64,

    /// spread: mean +- z*sd; stderr: mean +- z*sd/sqrt(B).
    #[arg(long, default_value_t = CiMode::SampleSpread)]
    pub ci_mode: CiMode,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, default_value_t = OutputFormat::Json)]
    pub out_format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub ci: CiArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Subsampling proportion in (0, 1].
    #[arg(long)]
    pub p: f64,

    /// Number of bootstrap samples.
    #[arg(long = "B", default_value_t = 100)]
    pub samples: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Also solve the full graph and report it as exact_flow.
    #[arg(long)]
    pub with_exact: bool,

    /// Include the scaled bootstrap values in JSON output.
    #[arg(long)]
    pub keep_phi: bool,

    #[command(flatten)]
    pub ci: CiArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepBArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long)]
    pub p: f64,

    #[arg(
        long,
        value_delimiter = ',',
        default_value = "100,200,300,400,500,600,700,800,900,1000"
    )]
    pub b_list: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_values_t = default_seeds())]
    pub seeds: Vec<u64>,

    #[command(flatten)]
    pub ci: CiArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepPArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0"
    )]
    pub p_list: Vec<f64>,

    #[arg(long = "B", default_value_t = 100)]
    pub samples: usize,

    #[arg(long, value_delimiter = ',', default_values_t = default_seeds())]
    pub seeds: Vec<u64>,

    #[command(flatten)]
    pub ci: CiArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,

    #[arg(long)]
    pub er_pi: f64,

    #[arg(long, default_value = "unit")]
    pub er_cap: CapacitySpec,

    #[arg(long, value_enum, default_value_t = BenchMode::Scaling)]
    pub mode: BenchMode,

    #[arg(long = "B", required_if_eq("mode", "fixed"))]
    pub samples: Option<usize>,

    #[arg(long, required_if_eq("mode", "fixed"))]
    pub p: Option<f64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, default_value_t = OutputFormat::Csv)]
    pub out_format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub er_n: usize,

    #[arg(long)]
    pub er_pi: f64,

    #[arg(long, default_value = "unit")]
    pub er_cap: CapacitySpec,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const DEFAULT_SEED_COUNT: u64 = 20;

fn default_seeds() -> Vec<u64> {
    (0..DEFAULT_SEED_COUNT).collect()
}
