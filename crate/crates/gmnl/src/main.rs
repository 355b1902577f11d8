//! Thin command-line wrapper over the library's verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gmnl::runner::{run, Command as RunCommand, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "gmnl",
    about = "Verification workbench for the multipartite nonlocality of graph states",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Violation tolerance (also via the GMNL_TOL environment variable).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: TopCommand,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum TopCommand {
    /// Run a named quantum-violation suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Critical visibility of the caterpillar inequality, optionally with a
    /// visibility sweep.
    NoiseThreshold(NoiseArgs),
    /// Neighbour-communication protocols.
    #[command(subcommand)]
    Lonc(LoncCommand),
    /// Network-inflation claim checking.
    #[command(subcommand)]
    Inflation(InflationCommand),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The four-partite cluster inequality at its quantum value 6 + 2√2.
    C4,
    /// The caterpillar inequality on a given spine/leg profile.
    Caterpillar(CaterpillarArgs),
    /// Conditional CGLMP violation and stabilizer statistics of the qudit
    /// cluster state.
    QuditCluster(SizeDimArgs),
    /// Conditional CGLMP violation and perfect correlations of the qudit
    /// GHZ state.
    QuditGhz(SizeDimArgs),
    /// The GHZ-line inequality, optionally with the brute-force
    /// communication bound.
    GhzLine(GhzLineArgs),
}

#[derive(Args)]
struct CaterpillarArgs {
    /// Spine length L.
    #[arg(long)]
    spine: usize,
    /// Per-position leg counts (L comma-separated entries; empty = bare line).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    legs: Vec<usize>,
    /// Visibility η of the measured state.
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
}

#[derive(Args)]
struct SizeDimArgs {
    /// Number of parties N.
    #[arg(long)]
    n: usize,
    /// Local dimension d.
    #[arg(long)]
    d: usize,
}

#[derive(Args)]
struct GhzLineArgs {
    /// Number of parties n.
    #[arg(long)]
    n: usize,
    /// Communication rounds t for the brute-force bound.
    #[arg(long)]
    t: Option<usize>,
    /// Also maximize the functional over deterministic strategies with t
    /// rounds of one-way neighbour communication.
    #[arg(long)]
    brute_force: bool,
}

#[derive(Args)]
struct NoiseArgs {
    /// Spine length L.
    #[arg(long)]
    spine: usize,
    /// Per-position leg counts (empty = bare line).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    legs: Vec<usize>,
    /// Evaluate the inequality on a visibility grid around the threshold.
    #[arg(long)]
    sweep: bool,
}

#[derive(Subcommand)]
enum LoncCommand {
    /// Run the two-round cluster-preparation protocol and validate its trace.
    Prepare(PrepareArgs),
}

#[derive(Args)]
struct PrepareArgs {
    /// Number of parties N.
    #[arg(long)]
    n: usize,
    /// Also simulate the circuit and compare against the cluster state.
    #[arg(long)]
    state_check: bool,
}

#[derive(Subcommand)]
enum InflationCommand {
    /// Check a claim script: a built-in suite or a JSON file.
    Check(CheckArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// appendixB, appendixC, appendixD, or `file` with a path argument.
    #[arg(long)]
    suite: String,
    /// Path to a claim-script JSON file (with --suite file).
    path: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = cli
        .tol
        .or_else(|| {
            std::env::var("GMNL_TOL")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(gmnl::DEFAULT_TOL);
    let command = match cli.command {
        TopCommand::Verify(VerifyCommand::C4) => RunCommand::VerifyC4,
        TopCommand::Verify(VerifyCommand::Caterpillar(a)) => RunCommand::VerifyCaterpillar {
            spine: a.spine,
            legs: a.legs,
            eta: a.eta,
        },
        TopCommand::Verify(VerifyCommand::QuditCluster(a)) => {
            RunCommand::VerifyQuditCluster { n: a.n, d: a.d }
        }
        TopCommand::Verify(VerifyCommand::QuditGhz(a)) => {
            RunCommand::VerifyQuditGhz { n: a.n, d: a.d }
        }
        TopCommand::Verify(VerifyCommand::GhzLine(a)) => RunCommand::VerifyGhzLine {
            n: a.n,
            t: a.t,
            brute_force: a.brute_force,
        },
        TopCommand::NoiseThreshold(a) => RunCommand::NoiseThreshold {
            spine: a.spine,
            legs: a.legs,
            sweep: a.sweep,
        },
        TopCommand::Lonc(LoncCommand::Prepare(a)) => RunCommand::LoncPrepare {
            n: a.n,
            state_check: a.state_check,
        },
        TopCommand::Inflation(InflationCommand::Check(a)) => RunCommand::InflationCheck {
            suite: a.suite,
            path: a.path,
        },
    };
    let config = RunConfig {
        command,
        format: match cli.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        },
        output: cli.output,
        tol,
    };
    match run(&config) {
        Ok((code, rendered)) => {
            if config.output.is_none() {
                print!("{rendered}");
            }
            ExitCode::from(code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
