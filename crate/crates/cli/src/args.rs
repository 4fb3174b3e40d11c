use std::num::NonZeroUsize;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digrho_core::enumerate::VertexCap;
use digrho_core::SpectralOptions;

use crate::error::{CliError, CliResult};
use crate::report::Format;

/// Maximum spectral radius of simple digraphs with a given number of arcs.
#[derive(Debug, Parser)]
#[command(name = "digrho", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Power iteration tolerance, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Power iteration cap.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_iter: usize,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for sweeps (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Validated global settings.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub spectral: SpectralOptions,
    pub jobs: usize,
}

impl GlobalArgs {
    pub fn config(&self) -> CliResult<RunConfig> {
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(CliError::Usage(format!("--tol must lie in (0, 1e-3], got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(CliError::Usage("--max-iter must be positive".into()));
        }
        let jobs = match self.jobs {
            Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
            Some(j) => j,
            None => std::thread::available_parallelism().map_or(1, NonZeroUsize::get),
        };
        Ok(RunConfig { spectral: SpectralOptions { tol: self.tol, max_iter: self.max_iter }, jobs })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the extremal candidate for an arc count.
    Dsharp {
        #[arg(long)]
        arcs: u64,
        #[arg(long, value_enum, default_value_t = Emit::Both)]
        emit: Emit,
    },
    /// Spectral radius and Perron vectors of a digraph file.
    Rho {
        #[arg(long)]
        digraph: PathBuf,
        /// Also rewire into the nested prefix family without lowering rho.
        #[arg(long)]
        normalize: bool,
    },
    /// Audit every upper bound on a digraph.
    Bounds {
        #[arg(long, conflicts_with = "arcs", required_unless_present = "arcs")]
        digraph: Option<PathBuf>,
        #[arg(long)]
        arcs: Option<u64>,
        /// Which digraph to build for --arcs.
        #[arg(long, value_enum, default_value_t = Family::Dsharp, requires = "arcs")]
        family: Family,
    },
    /// Sweep the nested prefix family and check the known results.
    Verify(VerifyArgs),
    /// List the canonical forms of the nested prefix family.
    Enumerate {
        #[arg(long)]
        arcs: u64,
        #[arg(long, default_value = "default", value_parser = parse_cap)]
        cap: VertexCap,
        /// Append the spectral radius of each form.
        #[arg(long)]
        rho: bool,
    },
    /// Exhaustive search over all arc subsets on a fixed vertex count.
    Oracle {
        #[arg(long)]
        arcs: u64,
        #[arg(long)]
        vertices: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    pub arcs: Option<u64>,
    /// Inclusive arc range `a..b` (or `a..=b`).
    #[arg(long, value_parser = parse_range)]
    pub range: Option<RangeInclusive<u64>>,
    #[arg(long, value_enum, default_value_t = Mode::Conjecture)]
    pub mode: Mode,
    /// Vertex cap for sweeps: `default`, `uncapped` or a number.
    #[arg(long, default_value = "default", value_parser = parse_cap)]
    pub cap: VertexCap,
    /// Allow sweeps above 40 arcs.
    #[arg(long)]
    pub long_running: bool,
    /// Leave `elapsed_ms` empty so reports are byte-stable.
    #[arg(long)]
    pub no_timing: bool,
    /// Largest vertex count for the brute-force comparison.
    #[arg(long, default_value_t = 4)]
    pub max_vertices: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Digraph,
    Rho,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Dsharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Unique maximizer is the extremal candidate.
    Conjecture,
    /// Closed forms for t in {0, 1, 2k-2, 2k-1}.
    ClosedForms,
    /// Bound chain when k > 4t^4 + 4, sweep otherwise.
    LargeClique,
    /// Brute force over arc subsets against the sweep.
    Oracle,
}

fn parse_cap(s: &str) -> Result<VertexCap, String> {
    match s {
        "default" => Ok(VertexCap::Default),
        "uncapped" => Ok(VertexCap::Uncapped),
        n => n
            .parse()
            .map(VertexCap::At)
            .map_err(|_| format!("expected `default`, `uncapped` or a vertex count, got {n:?}")),
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("bad arc count {x:?}"));
    let (a, b) = (num(a)?, num(b)?);
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}
