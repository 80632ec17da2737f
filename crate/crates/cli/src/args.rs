use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use radmds::{CentralityKind, DissimilarityKind, EdgeListFormat};

#[derive(Debug, Parser)]
#[command(
    name = "radmds",
    version,
    about = "Radially constrained graph embedding"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed a graph and write CSV, SVG and manifest artifacts.
    Embed(EmbedArgs),
    /// Compute centralities and radial bounds only.
    Centrality(CentralityArgs),
    /// Embed once per smoothness weight, sharing seed and initialization.
    LambdaSweep(SweepArgs),
    /// Re-run the embedding recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    /// Whitespace-separated, '#' comments (SNAP style).
    Snap,
    Csv,
}

impl From<Format> for EdgeListFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Snap => EdgeListFormat::SnapTsv,
            Format::Csv => EdgeListFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Centrality {
    Betweenness,
    Closeness,
    Degree,
}

impl From<Centrality> for CentralityKind {
    fn from(c: Centrality) -> Self {
        match c {
            Centrality::Betweenness => CentralityKind::Betweenness,
            Centrality::Closeness => CentralityKind::Closeness,
            Centrality::Degree => CentralityKind::Degree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dissimilarity {
    /// Euclidean commute-time distance.
    Ectd,
    ShortestPath,
}

impl From<Dissimilarity> for DissimilarityKind {
    fn from(d: Dissimilarity) -> Self {
        match d {
            Dissimilarity::Ectd => DissimilarityKind::Ectd,
            Dissimilarity::ShortestPath => DissimilarityKind::ShortestPath,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct InputArgs {
    /// Edge-list file.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Snap)]
    pub format: Format,

    /// Keep only the largest connected component (default: off).
    #[arg(long)]
    pub largest_component: bool,

    #[arg(long, value_enum, default_value_t = Centrality::Betweenness)]
    pub centrality: Centrality,

    /// Give every node this radial bound instead of the centrality transform
    /// (default: none).
    #[arg(long, value_name = "R")]
    pub uniform_radius: Option<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = Dissimilarity::Ectd)]
    pub dissimilarity: Dissimilarity,

    /// Embedding dimension.
    #[arg(long, default_value_t = 2)]
    pub p: usize,

    /// Stopping tolerance on the Frobenius step
    /// (default: 1e-4 * sqrt(N p) * largest radial bound).
    #[arg(long)]
    pub epsilon: Option<f64>,

    #[arg(long, default_value_t = 1000)]
    pub max_iters: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Read the dissimilarity matrix from this file if it exists, otherwise
    /// compute it and write it there (default: none).
    #[arg(long, value_name = "PATH")]
    pub delta_cache: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    /// Output directory (default: runs/run-<UTC timestamp>).
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Draw nodes only in the SVG (default: off).
    #[arg(long)]
    pub no_edges: bool,

    /// Dashed circles at the quartiles of the radial bounds (default: off).
    #[arg(long)]
    pub guides: bool,

    /// Fill the trace CSV seconds column; makes the trace nondeterministic
    /// (default: off).
    #[arg(long)]
    pub record_timings: bool,
}

#[derive(Clone, Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solve: SolveArgs,

    /// Smoothness penalty weight.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct CentralityArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Output directory (default: runs/run-<UTC timestamp>).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solve: SolveArgs,

    /// Comma-separated smoothness weights.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,1,100,10000",
        allow_negative_numbers = true
    )]
    pub lambdas: Vec<f64>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct ReplayArgs {
    /// manifest.json written by a previous run.
    #[arg(long)]
    pub manifest: PathBuf,

    /// Output directory (default: the one recorded in the manifest).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
