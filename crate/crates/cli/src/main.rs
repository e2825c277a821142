mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use graphcocycle::par;

use report::Report;

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser, Debug)]
#[command(name = "graphcocycle", version, about = "Cocycles of group actions on finite graphs")]
struct Cli {
    /// Print the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel suites (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MatrixMode {
    Toeplitz,
    Ck,
}

/// SPEC is a TOML file or an inline builder such as "epk a=2 b=1".
#[derive(Subcommand, Debug)]
enum Command {
    /// Check the cocycle identity and the vertex condition.
    Validate {
        spec: String,
        /// Also require φ(g,e)·v = g·v at every vertex.
        #[arg(long)]
        strong: bool,
    },
    /// Orbits, vertex types, signature and canonical forms.
    Classify {
        spec: String,
        /// Fail with an error if the signature is not defined.
        #[arg(long)]
        signature: bool,
    },
    /// Decide cohomology conjugacy of two systems on their edge sets.
    Compare {
        a: String,
        b: String,
        /// Sup-norm box for brute-force witness search.
        #[arg(long, default_value_t = 4)]
        bound: u64,
        /// Restrict the first system to one edge orbit.
        #[arg(long)]
        orbit_a: Option<usize>,
        /// Restrict the second system to one edge orbit.
        #[arg(long)]
        orbit_b: Option<usize>,
    },
    /// Split into edge orbits with certified canonical forms.
    Decompose { spec: String },
    /// Extend action and cocycle to paths and check the extension identities.
    Extend {
        spec: String,
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        radius: u64,
    },
    /// Rewrite an expression in p, s, s*, u to normal form.
    Normalize { spec: String, expression: String },
    /// Compare an expression with its normal form on the Fock model.
    Fock {
        spec: String,
        expression: String,
        #[arg(long, default_value_t = 8)]
        length: usize,
        #[arg(long, default_value_t = 4)]
        radius: u64,
    },
    /// Check a JSON matrix family against the Toeplitz or CK relations.
    Checkmatrices {
        spec: String,
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MatrixMode::Ck)]
        mode: MatrixMode,
        #[arg(long, default_value_t = graphcocycle::toeplitz::DEFAULT_TOL)]
        tol: f64,
        /// Search 1×1 families on a grid with this many steps instead.
        #[arg(long)]
        scan: Option<usize>,
    },
    /// Run the algebra identity suites and random Fock checks.
    Selftest {
        spec: String,
        #[arg(long, default_value_t = 4)]
        ball: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        words: usize,
    },
    /// Emit a builder's system as TOML, e.g. `build epk a=2 b=1`.
    Build {
        builder: String,
        params: Vec<String>,
        /// Keep the [construct] form instead of spelling out the system.
        #[arg(long)]
        compact: bool,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    use commands::*;
    match &cli.command {
        Command::Validate { spec, strong } => validate(spec, *strong),
        Command::Classify { spec, signature } => classify(spec, *signature),
        Command::Compare { a, b, bound, orbit_a, orbit_b } => compare(a, b, *bound, *orbit_a, *orbit_b),
        Command::Decompose { spec } => decompose(spec),
        Command::Extend { spec, length, radius } => extend(spec, *length, *radius),
        Command::Normalize { spec, expression } => normalize(spec, expression),
        Command::Fock { spec, expression, length, radius } => fock(spec, expression, *length, *radius),
        Command::Checkmatrices { spec, file, mode, tol, scan } => checkmatrices(spec, file.as_deref(), *mode, *tol, *scan),
        Command::Selftest { spec, ball, trials, words } => selftest(spec, *ball, *trials, *words, cli.seed),
        Command::Build { builder, params, compact } => build(builder, params, *compact),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match par::with_threads(cli.jobs, || run(&cli)) {
        Ok(mut report) => {
            if cli.timings {
                report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", report.human());
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
