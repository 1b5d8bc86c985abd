//! `pqmaps`: command-line front end.
//!
//! Exit status: 0 on success, 1 when a certification fails, 2 on invalid
//! input (bad arguments, unreadable or malformed files).

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pqmaps_core::seeds::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "pqmaps", version, about = "Spaces of (p,q)-maps: bookkeeping, certification, resolutions, discriminants, approximation")]
pub struct Cli {
    /// Base seed for every random choice; also read from PQMAPS_SEED.
    #[arg(long, global = true, env = "PQMAPS_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension counts, E^1 pages and stable ranges.
    #[command(subcommand)]
    Bookkeeping(BookkeepingCmd),
    /// Monte Carlo certification of general-position statements.
    #[command(subcommand)]
    Genpos(GenposCmd),
    /// Simplicial resolutions, spectral sequences and Betti tables.
    #[command(subcommand)]
    Resolve(ResolveCmd),
    /// Common zeros of (p,q)-map tuples.
    #[command(subcommand)]
    Disc(DiscCmd),
    /// Fitting (p,q)-maps to sampled maps.
    #[command(subcommand)]
    Approx(ApproxCmd),
}

#[derive(Args, Debug, Clone, serde::Serialize)]
pub struct ParamArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub q: u32,
}

#[derive(Subcommand, Debug)]
pub enum BookkeepingCmd {
    /// Dimensions of the coefficient spaces.
    Report {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// The E^1 page, evaluated against a Betti table when one is given.
    E1(E1Args),
    /// The stable range for degree d.
    StableRange {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args, Debug, serde::Serialize)]
pub struct E1Args {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub rmax: i64,
    #[arg(long)]
    pub smax: i64,
    /// Include entries outside the stable strip.
    #[arg(long)]
    pub extended: bool,
    /// BettiTable CSV (columns r, degree, rank, field).
    #[arg(long)]
    pub betti: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum GenposCmd {
    Certify(CertifyArgs),
}

#[derive(Args, Debug, serde::Serialize)]
pub struct CertifyArgs {
    /// vdm, hyperplanes, fiber or simplices.
    #[arg(long)]
    pub lemma: String,
    #[arg(long)]
    pub m: u32,
    /// Defaults to m.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub q: u32,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = pqmaps_core::genpos::DEFAULT_MAGNITUDE)]
    pub magnitude: i64,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ResolveCmd {
    Build(BuildArgs),
    /// Spectral sequence of a resolution or filtered complex.
    Ss(SsArgs),
    /// Compactly supported Betti numbers of configuration spaces of the plane, as CSV.
    BettiTable(BettiTableArgs),
}

#[derive(Args, Debug, serde::Serialize)]
pub struct BuildArgs {
    /// Map JSON (`-` for stdin).
    #[arg(long)]
    pub map: String,
    /// nondegenerate or embedded.
    #[arg(long, default_value = "nondegenerate")]
    pub mode: String,
    /// Embedding JSON, required for the embedded mode.
    #[arg(long)]
    pub embedding: Option<String>,
    /// Filtration depth (default: largest fiber).
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug, serde::Serialize)]
pub struct SsArgs {
    /// Resolution report, resolution, or bare filtered complex JSON.
    #[arg(long = "in")]
    pub input: String,
    #[arg(long, default_value = "q")]
    pub field: String,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug, serde::Serialize)]
pub struct BettiTableArgs {
    #[arg(long, default_value_t = 4)]
    pub rmax: usize,
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Largest r accepted.
    #[arg(long, default_value_t = pqmaps_resolution::fox_neuwirth::DEFAULT_BOUND)]
    pub bound: usize,
    /// CSV destination (default: stdout, with no JSON report).
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum DiscCmd {
    Check(DiscArgs),
}

#[derive(Args, Debug, serde::Serialize)]
pub struct DiscArgs {
    /// Tuple JSON (`-` for stdin).
    #[arg(long)]
    pub tuple: String,
    /// exact or numeric.
    #[arg(long, default_value = "numeric")]
    pub mode: String,
    #[arg(long, default_value_t = pqmaps_core::discriminant::DEFAULT_TOL)]
    pub tol: f64,
    /// Also compare against the stabilized tuple.
    #[arg(long)]
    pub stabilize: bool,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ApproxCmd {
    Fit(FitArgs),
}

#[derive(Args, Debug, serde::Serialize)]
pub struct FitArgs {
    /// Samples JSON: [{"x": [[re, im], ...], "y": [[re, im], ...]}, ...].
    #[arg(long)]
    pub samples: String,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Boundary polynomials JSON (one per target coordinate).
    #[arg(long)]
    pub boundary: Option<String>,
    /// Fit the ladder (k+1, k) for k = 0..=kmax instead of one (p, q).
    #[arg(long)]
    pub ladder: Option<u32>,
    /// unit-phase, fixed or projective.
    #[arg(long, default_value = "unit-phase")]
    pub policy: String,
    #[arg(long)]
    pub out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("pqmaps: cannot configure {jobs} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pqmaps: {e}");
            ExitCode::from(2)
        }
    }
}
