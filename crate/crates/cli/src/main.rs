mod commands;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use lrc_sim::Mode;

/// Version of the code construction that node files depend on.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "lrc",
    about = "Layered exact-repair regenerating codes: construction, analysis and simulation",
    disable_version_flag = true
)]
struct Cli {
    /// Print the code-construction schema version.
    #[arg(long, short = 'V')]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cyclic orbit census and pattern representatives for (w+γ)-subsets of n columns.
    Orbits(OrbitsArgs),
    /// Derived parameters of the canonical code.
    Params(ParamsArgs),
    /// Rank accumulation profile, optionally checked against the explicit generator.
    Rank(RankArgs),
    /// Shard a file into one node file per storage node.
    Encode(EncodeArgs),
    /// Rebuild the original file from surviving node files.
    Decode(DecodeArgs),
    /// Regenerate failed node files from d helpers.
    Repair(RepairArgs),
    /// Storage / repair-bandwidth tradeoff data.
    Tradeoff(TradeoffArgs),
    /// Run a failure history against a file-backed cluster.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub n: usize,
    /// Thread length w+γ.
    #[arg(long)]
    pub t: usize,
    /// Print the per-period census instead of the representatives.
    #[arg(long)]
    pub census: bool,
}

#[derive(Args, Debug)]
pub struct InnerArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub w: usize,
    #[arg(long)]
    pub gamma: usize,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub inner: InnerArgs,
    /// Field size; without it the field gates are skipped.
    #[arg(long)]
    pub q: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[command(flatten)]
    pub inner: InnerArgs,
    /// Field size for the oracle; defaults to the least prime power above w+γ.
    #[arg(long)]
    pub q: Option<usize>,
    /// Also compute ranks of the explicit generator over every node subset.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub inner: InnerArgs,
    #[arg(long)]
    pub q: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
    pub mode: ModeArg,
    /// lrc: number of nodes that must suffice for decoding.
    #[arg(long)]
    pub k: Option<usize>,
    /// lrc, local: extension degree.
    #[arg(long = "N")]
    pub ext_degree: Option<usize>,
    /// local: number of local groups.
    #[arg(long)]
    pub t: Option<usize>,
    /// local: message length in extension symbols.
    #[arg(long = "K")]
    pub filesize: Option<usize>,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Directory for the node files.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Canonical,
    Lrc,
    Local,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Canonical => Mode::Canonical,
            ModeArg::Lrc => Mode::Lrc,
            ModeArg::Local => Mode::Local,
        }
    }
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[arg(long)]
    pub nodes: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RepairArgs {
    /// Comma-separated node ids; defaults to every missing node.
    #[arg(long, value_delimiter = ',')]
    pub failed: Option<Vec<usize>>,
    #[arg(long)]
    pub nodes: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Canonical,
    Layered,
}

#[derive(Args, Debug)]
pub struct TradeoffArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Filesize, an integer or fraction.
    #[arg(long = "K")]
    pub filesize: Option<String>,
    /// Normalized (Ω*, Θ*) corners with γ = n-d.
    #[arg(long, conflicts_with_all = ["asymptotic", "family"])]
    pub normalized: bool,
    /// Asymptotic (Ω_a*, Θ_a*) at one (κ, θ).
    #[arg(long, requires_all = ["kappa", "theta"], conflicts_with = "family")]
    pub asymptotic: bool,
    #[arg(long, requires = "asymptotic")]
    pub kappa: Option<String>,
    #[arg(long, requires = "asymptotic")]
    pub theta: Option<String>,
    /// Sweep a code family over w.
    #[arg(long, value_enum, requires_all = ["gamma", "w_range"])]
    pub family: Option<Family>,
    #[arg(long, requires = "family")]
    pub gamma: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long, requires = "family")]
    pub w_range: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// A scripted event file, `poisson:rate,horizon` or `random:count`.
    #[arg(long)]
    pub events: String,
    /// CSV report path; standard output when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Node directory, overriding the config's `nodes_dir`.
    #[arg(long)]
    pub nodes: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.version {
        println!("{SCHEMA_VERSION}");
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("{}", Cli::command().render_usage());
        eprintln!("run `lrc --help` for the list of subcommands");
        return ExitCode::from(2);
    };
    let result = match command {
        Command::Orbits(a) => commands::orbits(a),
        Command::Params(a) => commands::params(a),
        Command::Rank(a) => commands::rank(a),
        Command::Encode(a) => commands::encode(a),
        Command::Decode(a) => commands::decode(a),
        Command::Repair(a) => commands::repair(a),
        Command::Tradeoff(a) => commands::tradeoff(a),
        Command::Simulate(a) => commands::simulate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lrc: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
