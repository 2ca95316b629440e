use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "simflow",
    version,
    about = "Exact max-flow and min-cut on simplicial complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximum γ-flow of one or more instance files.
    Maxflow(MaxflowArgs),
    /// Minimum γ-cut of one or more instance files.
    Mincut(MincutArgs),
    /// Exhaustive optimum for small instances.
    Brute(BruteArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Check a flow or cut certificate against an instance.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowMethod {
    Lp,
    Ff,
    Dual,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMethod {
    Lp,
    Dual,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteKind {
    CombCut,
    Flow,
}

#[derive(Args, Debug, Clone)]
pub struct CheckFlags {
    /// Cross-validate against the LP solution (default).
    #[arg(long, overrides_with = "no_check")]
    pub check: bool,
    /// Skip cross-validation.
    #[arg(long)]
    pub no_check: bool,
}

impl CheckFlags {
    pub fn enabled(&self) -> bool {
        !self.no_check
    }
}

#[derive(Args, Debug, Clone)]
pub struct MaxflowArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "lp")]
    pub method: FlowMethod,
    #[command(flatten)]
    pub check: CheckFlags,
    /// Line-delimited JSON iteration records (ff only, single file).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Worker threads for multiple files.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug, Clone)]
pub struct MincutArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "lp")]
    pub method: CutMethod,
    /// Ask for a minimum combinatorial cut instead of a topological one.
    #[arg(long)]
    pub combinatorial: bool,
    /// Use exhaustive search (with --combinatorial) or compare against it.
    #[arg(long)]
    pub brute: bool,
    /// Largest cut size the exhaustive search tries.
    #[arg(long)]
    pub max_size: Option<usize>,
    #[command(flatten)]
    pub check: CheckFlags,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug, Clone)]
pub struct BruteArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "comb-cut")]
    pub kind: BruteKind,
    #[arg(long)]
    pub max_size: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    /// md, mdw, octahedron, octahedron-variant, planar-square, graph,
    /// hitting-set, random, random-graph
    pub name: String,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub density: Option<f64>,
    /// Directed edges `a-b` or `a-b:capacity`, comma separated.
    #[arg(long)]
    pub edges: Option<String>,
    #[arg(long)]
    pub source: Option<usize>,
    #[arg(long)]
    pub sink: Option<usize>,
    /// Family members separated by `;`, elements by `,`.
    #[arg(long)]
    pub sets: Option<String>,
    /// Comma-separated universe; defaults to the union of the sets.
    #[arg(long)]
    pub universe: Option<String>,
    #[arg(long)]
    pub n_edges: Option<usize>,
    #[arg(long)]
    pub max_capacity: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// JSON with any of `flow` + `value`, `cochain`, `directed_cut`, `cut`.
    pub certificate: PathBuf,
}
