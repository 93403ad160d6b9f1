use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Build, apply and analyse category codes.
///
/// Set CC_THREADS to cap the number of worker threads.
#[derive(Debug, Parser)]
#[command(name = "catcode", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a codebook and write it as JSON.
    Gen(GenArgs),
    /// Encode decimal IDs (one per line) to CSV.
    Encode(EncodeArgs),
    /// Decode per-site distributions back to IDs.
    Decode(DecodeArgs),
    /// Report collision number, mutual information, AMKL and Hamming statistics.
    Metrics(MetricsArgs),
    /// Monte Carlo accuracy of the decoder under simulated base-learner noise.
    Simulate(SimulateArgs),
    /// List the built-in presets.
    Presets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Polynomial,
    Remainder,
    Gauss,
    Coo,
    Rmp,
    Ecoc,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// A named preset (see `catcode presets`).
    #[arg(long, conflicts_with = "scheme")]
    pub preset: Option<String>,
    #[arg(long, value_enum, required_unless_present = "preset")]
    pub scheme: Option<SchemeArg>,
    /// Number of classes; with --preset, overrides the preset's count.
    #[arg(long)]
    pub n: Option<u64>,
    /// Number of sites that determine an ID.
    #[arg(long)]
    pub k: Option<u32>,
    /// Field size for the polynomial scheme.
    #[arg(long)]
    pub p: Option<u64>,
    /// Number of sites when moduli or points are chosen automatically.
    #[arg(long)]
    pub r: Option<usize>,
    /// Comma-separated evaluation points (polynomial).
    #[arg(long, value_delimiter = ',')]
    pub points: Option<Vec<u64>>,
    /// Comma-separated moduli: integers, or Gaussian integers like 10+9i.
    #[arg(long, value_delimiter = ',')]
    pub moduli: Option<Vec<String>>,
    /// Width for coo, bit count for ecoc.
    #[arg(long)]
    pub bits: Option<u64>,
    /// Reed-Muller order parameter (rmp).
    #[arg(long)]
    pub m: Option<u32>,
    /// Coordinates kept after puncturing (rmp).
    #[arg(long)]
    pub kept: Option<u64>,
    /// IDs from most to least frequent, one per line (coo); unlisted IDs follow in order.
    #[arg(long)]
    pub frequency: Option<PathBuf>,
    /// Random distinct codewords instead of the binary expansion (ecoc).
    #[arg(long)]
    pub random: bool,
    /// Exponent slack of the automatic modulus search window.
    #[arg(long, default_value_t = catcode::arith::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit complemented r-hot vectors.
    #[arg(long)]
    pub anti: bool,
    /// Output path; the JSON goes to stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EncodeMode {
    Sites,
    Rhot,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long, short)]
    pub codebook: PathBuf,
    /// File of decimal IDs, or `-` for stdin.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = EncodeMode::Sites)]
    pub mode: EncodeMode,
    /// Complement the r-hot bits (implies --mode rhot).
    #[arg(long)]
    pub anti: bool,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long, short)]
    pub codebook: PathBuf,
    /// JSON ensemble output `{"dists": [...]}`, or an array of them.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Probability floor applied before taking logs.
    #[arg(long, default_value_t = catcode::inference::DEFAULT_FLOOR)]
    pub floor: f64,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long, short)]
    pub codebook: PathBuf,
    /// Compute the collision number.
    #[arg(long)]
    pub collision: bool,
    /// Sample this many pairs instead of scanning all of them (a lower bound).
    #[arg(long)]
    pub sampled: Option<u64>,
    /// Largest class count for exhaustive scans.
    #[arg(long, default_value_t = catcode::metrics::DEFAULT_COLLISION_CAP)]
    pub cap: u64,
    /// Exit with status 1 unless the exhaustive collision number meets the lower bound.
    #[arg(long)]
    pub verify_minimal: bool,
    /// Mutual information between two sites; repeatable.
    #[arg(long, num_args = 2, value_names = ["I", "J"], action = clap::ArgAction::Append)]
    pub mi: Vec<usize>,
    /// Mutual information for every pair of sites.
    #[arg(long)]
    pub mi_all: bool,
    #[arg(long, default_value_t = catcode::metrics::DEFAULT_MI_CAP)]
    pub mi_cap: u64,
    /// Average minimal KL coefficient.
    #[arg(long)]
    pub amkl: bool,
    /// Per-ID probabilities for AMKL, one per line.
    #[arg(long, requires = "amkl")]
    pub weights: Option<PathBuf>,
    /// Hamming statistics over this many sampled pairs.
    #[arg(long)]
    pub hamming: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseArg {
    Delta,
    Symmetric,
    Dirichlet,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Codebook files; several give a comparison table.
    #[arg(long, short)]
    pub codebook: Vec<PathBuf>,
    /// Presets to include alongside (or instead of) codebook files.
    #[arg(long)]
    pub preset: Vec<String>,
    #[arg(long, value_enum, default_value_t = NoiseArg::Symmetric)]
    pub noise: NoiseArg,
    #[arg(long, default_value_t = 0.3)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
