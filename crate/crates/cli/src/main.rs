//! `wsp`: command-line front end for the wildfire suppression toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or validation error,
//! 3 resource-limit refusal. Diagnostics go to stderr; data goes to files
//! or stdout.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use wsp_core::generator::{DelayLevel, FirstRelease, GridSize, LastRelease, ResourcesLevel, SlopeLevel, WindLevel};
use wsp_core::io::INSTANCE_FORMAT_VERSION;
use wsp_core::WspError;

#[derive(Debug, Parser)]
#[command(name = "wsp", about = "Wildfire suppression on directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a benchmark instance from a synthetic landscape.
    Generate(GenerateArgs),
    /// Solve an instance and write a solution file.
    Solve(SolveArgs),
    /// Check a solution against an instance and print its objective.
    Evaluate(EvaluateArgs),
    /// Write a MIP model of an instance in LP or MPS format.
    ExportMip(ExportArgs),
    /// Reduce an MVNP instance to a suppression problem.
    Reduce(ReduceArgs),
    /// Check the MVNP reductions on random instances.
    VerifyReductions(VerifyArgs),
    /// Run a benchmark plan, appending records to a CSV.
    Bench(BenchArgs),
    /// Compute profiles and rank scores from benchmark records.
    Report(ReportArgs),
    /// Fire spread physics.
    Physics {
        #[command(subcommand)]
        command: PhysicsCommand,
    },
}

#[derive(Debug, Subcommand)]
enum PhysicsCommand {
    /// Print slope and wind factors, the spread multiplier and spread rate.
    Eval(PhysicsArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Instance seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Grid size level: small (20), medium (30), large (40), huge (80).
    #[arg(long, default_value = "medium", conflicts_with = "side")]
    grid: GridSize,
    /// Vertices per grid side, overriding --grid.
    #[arg(long)]
    side: Option<usize>,
    /// Landscape side length in feet.
    #[arg(long, default_value_t = wsp_core::generator::config::DEFAULT_EXTENT_FT)]
    extent_ft: f64,
    /// Slope level: flat (10°), moderate (20°), steep (40°).
    #[arg(long, default_value = "moderate")]
    slope: SlopeLevel,
    /// Wind level: light (94.5-195.0 ft/min), moderate (324.9-466.5 ft/min), strong (637.8-815.1 ft/min).
    #[arg(long, default_value = "light")]
    wind: WindLevel,
    /// Predominant wind direction in radians from the +x axis.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    wind_direction: f64,
    /// Delay level: low (H/3), medium (H/2), high (H), in minutes.
    #[arg(long, default_value = "high")]
    delay: DelayLevel,
    /// Resources level: few (n/2), moderate (n), many (2n).
    #[arg(long, default_value = "moderate")]
    resources: ResourcesLevel,
    /// Decision points: few (5), moderate (10), many (20), or a positive count.
    #[arg(long, default_value = "moderate", value_parser = parse_decisions)]
    decisions: usize,
    /// First release: early (q5), late (q10), very_late (q20) of free-burn arrival minutes.
    #[arg(long, default_value = "early")]
    first_release: FirstRelease,
    /// Last release: very_early (q60), early (q70), late (q80), very_late (q95).
    #[arg(long, default_value = "very_late")]
    last_release: LastRelease,
    /// Output instance file.
    #[arg(short, long)]
    output: PathBuf,
}

fn parse_decisions(s: &str) -> Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return if n > 0 { Ok(n) } else { Err("decision points must be positive".into()) };
    }
    s.parse::<wsp_core::generator::DecisionLevel>().map(|l| l.count()).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Algo {
    /// Random search.
    Rs,
    /// Beam search.
    Beam,
    /// Exhaustive enumeration.
    Exact,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random search time limit in seconds (default: 1.5 s per vertex).
    #[arg(long)]
    time_limit: Option<f64>,
    /// Random search iteration limit.
    #[arg(long)]
    iterations: Option<u64>,
    /// Beam width (nodes kept per level); 0 keeps all.
    #[arg(long, default_value_t = 8)]
    beam_width: usize,
    /// Children per beam node; 0 generates every combination.
    #[arg(long, default_value_t = 16)]
    expansions: usize,
    /// Largest search-space estimate the exact solver accepts.
    #[arg(long, default_value_t = 5_000_000)]
    max_nodes: u64,
    /// Instance file.
    #[arg(short, long)]
    input: PathBuf,
    /// Solution file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Instance file.
    #[arg(short, long)]
    input: PathBuf,
    /// Solution file.
    #[arg(short, long)]
    solution: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ModelKind {
    Wsp,
    Hof,
    Wei,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum FormatArg {
    Lp,
    Mps,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long, value_enum, default_value = "wsp")]
    model: ModelKind,
    #[arg(long, value_enum, default_value = "lp")]
    format: FormatArg,
    /// Instance file.
    #[arg(short, long)]
    input: PathBuf,
    /// Sidecar JSON with weights, flame lengths (ft), alpha, beta, targets or budget.
    #[arg(long)]
    aux: Option<PathBuf>,
    /// Model file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ReduceFrom {
    Mvnp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ReduceTo {
    Wsp,
    Wwsp,
    Hwsp,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(long, value_enum, default_value = "mvnp")]
    from: ReduceFrom,
    #[arg(long, value_enum)]
    to: ReduceTo,
    /// MVNP instance file.
    #[arg(short, long)]
    input: PathBuf,
    /// Reduced instance file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    max_vertices: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap per decision.
    #[arg(long, default_value_t = wsp_core::reductions::DEFAULT_ENUMERATION_CAP)]
    cap: u64,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Plan JSON: instances, algorithms, replications, time limits (s).
    #[arg(long)]
    plan: PathBuf,
    /// Worker threads.
    #[arg(long, env = "WSP_WORKERS")]
    workers: Option<usize>,
    /// Records CSV; existing records are kept and their cells skipped.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Records CSV written by `bench`.
    #[arg(long)]
    records: PathBuf,
    /// Output CSV of profile breakpoints (algorithm,tau,fraction).
    #[arg(long)]
    profiles: Option<PathBuf>,
    /// Output CSV of rank scores per algorithm (treatment,score).
    #[arg(long)]
    sm: Option<PathBuf>,
    /// Output CSV of pairwise score differences.
    #[arg(long)]
    sm_pairs: Option<PathBuf>,
    /// Output CSV of per-run relative deviations to the best-known value.
    #[arg(long)]
    deviations: Option<PathBuf>,
    /// Critical score difference; 335 and 244 are the published presets.
    #[arg(long, default_value_t = wsp_core::bench::DELTA_NINE_COMBINATIONS)]
    delta: f64,
}

#[derive(Debug, Args)]
struct PhysicsArgs {
    /// Signed slope tangent along the spread direction (negative = downslope).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    slope: f64,
    /// Signed midflame wind along the spread direction, ft/min (negative = backfire).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    wind: f64,
    /// Packing ratio.
    #[arg(long, default_value_t = 0.005)]
    beta: f64,
    /// Surface-area-to-volume ratio, 1/ft.
    #[arg(long, default_value_t = 2000.0)]
    sigma: f64,
    /// Relative packing ratio.
    #[arg(long, default_value_t = 1.0)]
    beta_rel: f64,
    /// Wind constant wiring: published or classic.
    #[arg(long, default_value = "published")]
    wiring: String,
    /// No-wind, no-slope spread rate, ft/min.
    #[arg(long)]
    r0: Option<f64>,
    /// Distance in ft; with --rate-head also prints the travel time in minutes.
    #[arg(long, requires = "rate_head")]
    distance: Option<f64>,
    /// Spread rate at the arc head, ft/min (the tail rate is R0·r).
    #[arg(long, requires_all = ["distance", "r0"])]
    rate_head: Option<f64>,
}

/// Errors a command can end with, mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(WspError),
    /// Ran to completion but the check it performed failed.
    Check(String),
}

impl From<WspError> for Failure {
    fn from(e: WspError) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(e.into())
    }
}

fn version_string() -> &'static str {
    Box::leak(format!("{} (instance format {INSTANCE_FORMAT_VERSION})", env!("CARGO_PKG_VERSION")).into_boxed_str())
}

fn main() -> ExitCode {
    let matches = match Cli::command().version(version_string()).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                WspError::LimitExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}
