//! Command-line surface. Every parsed command serializes to JSON and is echoed
//! into the artifacts it writes.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopset_core::{BunchMethod, WeightDist};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "hopset", version, about = "Build and verify (β, ε)-hopsets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Generate a seeded graph and write it as an edge list.
    Gen(GenArgs),
    /// Build a hopset for a graph.
    Build(BuildArgs),
    /// Check stretch within the hopbound on sampled pairs.
    Verify(VerifyArgs),
    /// Check a hopset of an unweighted graph as a standalone emulator.
    Emulate(EmulateArgs),
    /// Print hop parameters and per-level size statistics.
    Stats(StatsArgs),
    /// Run a grid of generate/build/verify cells.
    Matrix(MatrixArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Path,
    Grid,
    ErdosRenyi,
    RandomGeometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairModeArg {
    Uniform,
    Stratified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Clusters,
    Truncated,
}

impl From<MethodArg> for BunchMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Clusters => BunchMethod::Clusters,
            MethodArg::Truncated => BunchMethod::Truncated,
        }
    }
}

/// `--k N` or `--k auto`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelCount {
    Fixed(u32),
    Auto,
}

impl FromStr for LevelCount {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(LevelCount::Auto);
        }
        match s.parse::<u32>() {
            Ok(k) if k >= 1 => Ok(LevelCount::Fixed(k)),
            _ => Err(format!("k must be an integer >= 1 or 'auto', got '{s}'")),
        }
    }
}

fn parse_weights(s: &str) -> Result<WeightDist, String> {
    s.parse().map_err(|e: hopset_core::Error| e.to_string())
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(e) if e > 0.0 && e.is_finite() => Ok(e),
        _ => Err(format!("epsilon must be a positive number, got '{s}'")),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Vertex count. Grids take --rows and --cols, or a square side from --n.
    #[arg(long, required_unless_present_all = ["rows", "cols"])]
    pub n: Option<usize>,
    /// Edge count for erdos-renyi.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Connection radius for random-geometric.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Target mean degree for random-geometric when --radius is absent.
    #[arg(long, default_value_t = 10.0)]
    pub degree: f64,
    /// `unit` or `uniform:LO:HI`.
    #[arg(long, default_value = "unit", value_parser = parse_weights)]
    pub weights: WeightDist,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BuildArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Number of levels above V_0, or `auto`.
    #[arg(long)]
    pub k: LevelCount,
    /// Offset subtracted from floor(log2 log2 n) by `--k auto`.
    #[arg(long, default_value_t = 1)]
    pub k_offset: u32,
    /// Only used to print r and β; the construction does not depend on it.
    #[arg(long, value_parser = parse_epsilon)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "clusters")]
    pub method: MethodArg,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the sampled level assignment.
    #[arg(long)]
    pub levels_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub hopset: PathBuf,
    #[arg(long, value_parser = parse_epsilon)]
    pub epsilon: f64,
    /// Number of sampled pairs.
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    pub pair_mode: PairModeArg,
    /// Only sample targets at least this far from the source.
    #[arg(long)]
    pub min_distance: Option<f64>,
    /// Pair-sampling seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Report path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EmulateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub hopset: PathBuf,
    #[arg(long, default_value_t = 500)]
    pub pairs: usize,
    #[arg(long)]
    pub min_distance: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Allowed additive stretch in units of k * d^(1 - 1/k).
    #[arg(long, default_value_t = 8.0)]
    pub c: f64,
    /// Pairs at distance <= d-min are reported but not judged.
    #[arg(long, default_value_t = hopset_core::verify::EMULATOR_D_MIN)]
    pub d_min: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StatsArgs {
    #[arg(long)]
    pub hopset: PathBuf,
    /// When given, the hopset's fingerprint is checked against it.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, value_parser = parse_epsilon)]
    pub epsilon: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MatrixArgs {
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [FamilyName::ErdosRenyi, FamilyName::Grid, FamilyName::RandomGeometric])]
    pub families: Vec<FamilyName>,
    /// Vertex counts; grids use the nearest square side.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [1000usize])]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2])]
    pub k: Vec<u32>,
    #[arg(long, value_delimiter = ',', value_parser = parse_epsilon, default_values_t = [0.5, 1.0])]
    pub epsilon: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_parser = parse_weights,
          default_values_t = [WeightDist::Unit, WeightDist::Uniform { lo: 1.0, hi: 100.0 }])]
    pub weights: Vec<WeightDist>,
    /// Seeds per cell.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// Base seed; cell seeds derive from it and the cell index.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    /// Edges per vertex for erdos-renyi cells.
    #[arg(long, default_value_t = 5)]
    pub density: usize,
    /// Mean degree for random-geometric cells.
    #[arg(long, default_value_t = 10.0)]
    pub degree: f64,
    #[arg(long, env = "HOPSET_WORKERS")]
    #[serde(skip)]
    pub workers: Option<usize>,
    /// Summary JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
