use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use contingent_core::experiments::Family;
use contingent_core::Error;

mod commands;
mod format;

#[derive(Parser)]
#[command(name = "contingent", version, about = "Contingent payment mechanism simulations")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one mechanism on a profile file or a sampled profile.
    Run(RunArgs),
    /// Average mechanisms over sampled profiles.
    Sweep(SweepArgs),
    /// Profile-by-profile comparison of two mechanisms.
    Compare(CompareArgs),
    /// Single-agent reserve penalty gains, closed form against Monte Carlo.
    Reserve(ReserveArgs),
    /// Check a profile file and print each model's key quantities.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    #[value(alias = "exponential")]
    Exp,
    Uniform,
    Wp,
}

#[derive(Args)]
struct SamplerArgs {
    /// Type distribution to sample agents from.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    /// Upper end of the mean opportunity cost `1/λ` (exponential family).
    #[arg(long = "L", default_value_t = 10.0)]
    l: f64,
    /// Upper end of `a1` (uniform family).
    #[arg(long, default_value_t = 1.0)]
    a1_max: f64,
    /// Upper end of `w` (wp family).
    #[arg(long, default_value_t = 1.0)]
    w_max: f64,
    /// Number of resources; 1 samples a single-resource economy.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Base seed for all randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SamplerArgs {
    fn family(&self) -> Option<Family> {
        self.family.map(|kind| match kind {
            FamilyKind::Exp => Family::Exponential { l: self.l },
            FamilyKind::Uniform => Family::Uniform { a1_max: self.a1_max },
            FamilyKind::Wp => Family::Wp { w_max: self.w_max },
        })
    }
}

#[derive(Args)]
struct RunArgs {
    /// Profile file to load.
    #[arg(long, conflicts_with = "family")]
    profile: Option<PathBuf>,
    #[command(flatten)]
    sampler: SamplerArgs,
    /// Agent count when sampling.
    #[arg(long)]
    n: Option<usize>,
    /// Mechanism, e.g. `csp`, `spc:5`, `cmm:2`, `gcsp`.
    #[arg(long)]
    mechanism: String,
    /// Write the outcome as one CSV row.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Save the sampled profile to this file.
    #[arg(long, requires = "family")]
    emit_profile: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    sampler: SamplerArgs,
    /// Agent counts: `2..15`, `2,4,8` or a single number.
    #[arg(long)]
    n: String,
    /// Comma-separated mechanisms.
    #[arg(long, alias = "mechs", value_delimiter = ',', required = true)]
    mechanisms: Vec<String>,
    /// Profiles per agent count.
    #[arg(long, default_value_t = 10_000)]
    profiles: usize,
    /// Use 500 profiles per agent count.
    #[arg(long)]
    quick: bool,
    /// Record per-evaluation wall-clock time in `runtime_ns`.
    #[arg(long)]
    timing: bool,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    sampler: SamplerArgs,
    #[arg(long, default_value = "2..15")]
    n: String,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 10_000)]
    profiles: usize,
    #[arg(long)]
    quick: bool,
    /// Fractions CSV destination; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the per-profile records of both mechanisms.
    #[arg(long)]
    pairs: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReserveKind {
    #[value(alias = "exponential")]
    Exp,
    Uniform,
}

#[derive(Args)]
struct ReserveArgs {
    #[arg(long, value_enum)]
    family: ReserveKind,
    #[arg(long = "L", default_value_t = 10.0)]
    l: f64,
    /// Reserve penalties: `lo..hi` (see `--points`) or a comma-separated list.
    #[arg(long)]
    r: String,
    /// Grid points for a `lo..hi` range.
    #[arg(long, default_value_t = 11)]
    points: usize,
    /// Monte Carlo trials per grid point.
    #[arg(long, default_value_t = 1_000_000)]
    trials: usize,
    /// Use 100,000 trials.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    profile: PathBuf,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::ScaleLimit { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Run(args) => commands::run(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Compare(args) => commands::compare(args),
        Command::Reserve(args) => commands::reserve(args),
        Command::Validate(args) => commands::validate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
