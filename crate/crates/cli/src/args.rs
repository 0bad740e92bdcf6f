use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skg_core::{DegreeMethod, GeneratorMatrix, NoiseMode, NoiseSpec, Preset, SkgParams};
use skg_gen::DEFAULT_CHUNK_SIZE;

use crate::error::{CliError, Result};
use crate::experiment::Symmetrize;

#[derive(Debug, Parser)]
#[command(name = "skg", version, about = "Stochastic Kronecker graphs: generate, predict, analyze, compare")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an edge file and its .meta sidecar.
    Generate(GenerateArgs),
    /// Closed-form predictions for a parameter setting.
    Predict(PredictArgs),
    /// Measure an existing edge file.
    Analyze(AnalyzeArgs),
    /// Averaged empirical out-degree counts next to the predicted curves.
    Compare(CompareArgs),
}

/// Model parameters shared by every command that builds a graph.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// graph500, cahepph or webnotredame.
    #[arg(long)]
    pub preset: Option<String>,
    /// Initiator entries t1,t2,t3,t4; overrides the preset matrix.
    #[arg(long, value_delimiter = ',')]
    pub matrix: Option<Vec<f64>>,
    #[arg(long)]
    pub levels: Option<u32>,
    /// Number of edge insertions. Defaults to the preset rule, or 16 per vertex.
    #[arg(long)]
    pub edges: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Noise amplitude b.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Defaults to per-level when --noise is given.
    #[arg(long)]
    pub noise_mode: Option<NoiseMode>,
}

impl ModelArgs {
    pub fn resolve(&self) -> Result<SkgParams> {
        let preset = match &self.preset {
            Some(name) => Some(Preset::by_name(name).ok_or_else(|| {
                CliError::Usage(format!("unknown preset {name:?}; expected graph500, cahepph or webnotredame"))
            })?),
            None => None,
        };
        let matrix = match (&self.matrix, &preset) {
            (Some(v), _) => {
                let e: [f64; 4] = v
                    .as_slice()
                    .try_into()
                    .map_err(|_| CliError::Usage(format!("--matrix needs 4 entries, got {}", v.len())))?;
                GeneratorMatrix::from_entries(e)?
            }
            (None, Some(p)) => p.matrix,
            (None, None) => return Err(CliError::Usage("one of --preset or --matrix is required".into())),
        };
        let levels = self
            .levels
            .or(preset.map(|p| p.levels))
            .ok_or_else(|| CliError::Usage("--levels is required without a preset".into()))?;
        if !(1..=63).contains(&levels) {
            return Err(skg_core::SkgError::LevelsOutOfRange(levels).into());
        }
        let insertions = match (self.edges, preset) {
            (Some(m), _) => m,
            (None, Some(p)) => p.insertions(levels),
            (None, None) => 16u64 << levels,
        };
        let mode = self.noise_mode.unwrap_or(if self.noise.is_some() { NoiseMode::PerLevel } else { NoiseMode::None });
        let noise = NoiseSpec { mode, amplitude: self.noise.unwrap_or(0.0) };
        Ok(SkgParams::with_noise(matrix, levels, insertions, self.seed, noise)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Tsv,
    Bin,
}

impl From<FormatArg> for skg_gen::EdgeFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tsv => skg_gen::EdgeFormat::Tsv,
            FormatArg::Bin => skg_gen::EdgeFormat::Binary,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Remove repeated edges (output sorted).
    #[arg(long, conflicts_with = "multigraph")]
    pub simple: bool,
    /// Keep every insertion in order (default).
    #[arg(long)]
    pub multigraph: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    pub format: FormatArg,
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk_size: u64,
    /// Regenerate from a sidecar; model, chunk size, form and format flags are ignored.
    #[arg(long)]
    pub from_meta: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PredictReport {
    DegreeDist,
    Isolated,
    Repeats,
    Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Lemma,
    Theorem,
}

impl From<MethodArg> for DegreeMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => DegreeMethod::Exact,
            MethodArg::Lemma => DegreeMethod::Lemma,
            MethodArg::Theorem => DegreeMethod::Theorem,
        }
    }
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub report: PredictReport,
    /// Degree-dist only.
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1)]
    pub dmin: u64,
    /// Defaults to sqrt(n).
    #[arg(long)]
    pub dmax: Option<u64>,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnalyzeReport {
    DegreeDist,
    Isolated,
    Kcore,
    Oscillation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Out,
    In,
    Undirected,
}

impl From<OrientationArg> for skg_analysis::Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Out => skg_analysis::Orientation::Out,
            OrientationArg::In => skg_analysis::Orientation::In,
            OrientationArg::Undirected => skg_analysis::Orientation::Undirected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoreKindArg {
    Undirected,
    Out,
}

impl From<CoreKindArg> for skg_analysis::CoreKind {
    fn from(k: CoreKindArg) -> Self {
        match k {
            CoreKindArg::Undirected => skg_analysis::CoreKind::Undirected,
            CoreKindArg::Out => skg_analysis::CoreKind::OutCore,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Edge file, TSV or binary.
    pub input: PathBuf,
    /// Vertex count; read from the sidecar when absent.
    #[arg(long)]
    pub nodes: Option<u64>,
    /// Levels for the oscillation window; defaults to the sidecar or log2(nodes).
    #[arg(long)]
    pub levels: Option<u32>,
    #[arg(long, value_enum)]
    pub report: AnalyzeReport,
    #[arg(long, value_enum, default_value_t = OrientationArg::Out)]
    pub orientation: OrientationArg,
    #[arg(long, value_enum, default_value_t = CoreKindArg::Undirected)]
    pub core_kind: CoreKindArg,
    /// How directed edges become undirected ones for undirected cores.
    #[arg(long, value_enum, default_value_t = Symmetrize::Undirect)]
    pub symmetrize: Symmetrize,
    /// Count repeated edges in degree reports instead of deduplicating first.
    #[arg(long)]
    pub multigraph: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Instance i uses seed + i.
    #[arg(long, default_value_t = 25)]
    pub instances: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Exact, MethodArg::Lemma, MethodArg::Theorem])]
    pub methods: Vec<MethodArg>,
    /// Use multigraph degrees instead of the deduplicated graph.
    #[arg(long)]
    pub multigraph: bool,
    #[arg(long, default_value_t = 1)]
    pub dmin: u64,
    /// Defaults to sqrt(n).
    #[arg(long)]
    pub dmax: Option<u64>,
    /// Degrees with a smaller empirical mean are left out of the summary.
    #[arg(long, default_value_t = 100.0)]
    pub min_count: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Relative-error summary; defaults to `<out>.summary`, or stderr.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk_size: u64,
}
