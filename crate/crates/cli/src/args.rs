use std::path::PathBuf;

use blockpoly_core::io::Format;
use blockpoly_core::schur::PivotRule;
use blockpoly_core::CoefficientMode;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "blockpoly", version, about = "Characteristic and permanent polynomials via block decomposition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalArgs {
    /// Matrix file; standard input when absent or `-`.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,

    /// Input format; guessed from the extension when absent.
    #[arg(short, long, global = true, value_parser = parse_format)]
    pub format: Option<Format>,

    /// Coefficient ring; integer when every entry is integral, else complex.
    #[arg(short, long, global = true)]
    pub mode: Option<ModeArg>,

    #[arg(short, long, global = true, value_enum, default_value_t = EngineArg::Theorem)]
    pub engine: EngineArg,

    /// Emit a JSON report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the output here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for the engines.
    #[arg(long, global = true, env = "BLOCKPOLY_THREADS")]
    pub threads: Option<usize>,

    /// Include intermediate data (feasible tuples, full term breakdown).
    #[arg(long, global = true)]
    pub explain: bool,

    /// Relative tolerance for complex-mode comparisons.
    #[arg(long, global = true, default_value_t = blockpoly_core::DEFAULT_REL_TOL)]
    pub tolerance: f64,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Int,
    Complex,
}

impl From<ModeArg> for CoefficientMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Int => CoefficientMode::Int,
            ModeArg::Complex => CoefficientMode::Complex,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Theorem,
    Recursive,
    Oracle,
    #[value(name = "blockgraph")]
    BlockGraph,
}

impl EngineArg {
    pub fn name(self) -> &'static str {
        match self {
            EngineArg::Theorem => "theorem",
            EngineArg::Recursive => "recursive",
            EngineArg::Oracle => "oracle",
            EngineArg::BlockGraph => "blockgraph",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PivotArg {
    Auto,
    Exhaustive,
    MaxDegree,
    Smallest,
    Last,
}

impl From<PivotArg> for PivotRule {
    fn from(p: PivotArg) -> Self {
        match p {
            PivotArg::Auto => PivotRule::Auto,
            PivotArg::Exhaustive => PivotRule::Exhaustive,
            PivotArg::MaxDegree => PivotRule::MaxDegree,
            PivotArg::Smallest => PivotRule::Smallest,
            PivotArg::Last => PivotRule::Last,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchKind {
    /// Cliques glued in a path.
    Chain,
    /// Random digraph with planted cut-vertices.
    Random,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial det(A − λI).
    Charpoly,
    /// Permanent polynomial per(A − λI).
    Permpoly,
    /// Determinant.
    Det,
    /// Permanent.
    Per,
    /// Blocks, cut-vertices and cut-indices.
    Blocks {
        /// Print Graphviz DOT instead.
        #[arg(long)]
        dot: bool,
        /// Colour each block's edges differently in the DOT output.
        #[arg(long)]
        color_blocks: bool,
    },
    /// B-partitions with their summands.
    Bpartitions {
        /// Print only the number of B-partitions.
        #[arg(long)]
        count_only: bool,
    },
    /// Structural singularity conditions of a simple graph.
    SingularCheck,
    /// Determinant by Schur-complement elimination.
    SchurDet {
        #[arg(long, value_enum, default_value_t = PivotArg::Auto)]
        pivot: PivotArg,
        /// Include the elimination steps.
        #[arg(long)]
        trace: bool,
    },
    /// Check every engine against every applicable oracle.
    Verify,
    /// Time the engines on generated instances (CSV).
    Bench {
        #[arg(long, value_enum, default_value_t = BenchKind::Chain)]
        kind: BenchKind,
        /// Number of blocks in a chain.
        #[arg(long, default_value_t = 8)]
        blocks: usize,
        /// Vertices per block in a chain.
        #[arg(long, default_value_t = 3)]
        block_size: usize,
        /// Maximum order of a random instance.
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        instances: usize,
        /// Leave the timing column empty so output is reproducible.
        #[arg(long)]
        omit_timing: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Charpoly => "charpoly",
            Command::Permpoly => "permpoly",
            Command::Det => "det",
            Command::Per => "per",
            Command::Blocks { .. } => "blocks",
            Command::Bpartitions { .. } => "bpartitions",
            Command::SingularCheck => "singular-check",
            Command::SchurDet { .. } => "schur-det",
            Command::Verify => "verify",
            Command::Bench { .. } => "bench",
        }
    }
}
