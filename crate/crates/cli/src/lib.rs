//! The `romik` command line: value tables, theorem checks and conjecture
//! scans over the core engine.

mod compute;
mod output;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use romik_core::congruence::{Guards, DEFAULT_MODULAR_GUARD};
use romik_core::dseq::DEFAULT_MAX_N;

pub use compute::ComputeTarget;

/// Exit codes of the command line.
pub mod exit {
    pub const VERIFIED: i32 = 0;
    pub const COUNTEREXAMPLE: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
    pub const USAGE: i32 = 3;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "romik", version, about = "Exact values, congruence checks and conjecture scans for d(n), u(n), v(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print exact values of a sequence, matrix or polynomial family.
    Compute { target: ComputeTarget },
    /// Check a theorem on a finite range.
    Verify {
        /// thm-main-1, thm-main-2, thm-main-3, wakhare, d-u-p, thm1, thm1A,
        /// thm2, thm2A, thm4, thm9, thm12, prop2 or prop2a
        check: String,
    },
    /// Scan a conjecture; the exit code ignores the mathematical outcome.
    Scan {
        /// c1, c2, c3, c4, c5 or h2adic
        conjecture: String,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct Opts {
    #[arg(short = 'p', long = "prime", global = true)]
    pub prime: Option<u64>,
    #[arg(short = 'e', long = "exponent", global = true)]
    pub exponent: Option<u32>,
    /// Largest index computed (horizon of a check).
    #[arg(long = "max-n", visible_alias = "horizon", global = true)]
    pub max_n: Option<usize>,
    /// Defaults to csv for tables and json for reports.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Lift the index guards.
    #[arg(long = "unsafe-no-guard", global = true)]
    pub unsafe_no_guard: bool,
    /// Largest index for exact big-integer work.
    #[arg(long, env = "ROMIK_MAX_N", default_value_t = DEFAULT_MAX_N, global = true)]
    pub guard: usize,
    /// Largest index for residue recurrences.
    #[arg(long, env = "ROMIK_MODULAR_GUARD", default_value_t = DEFAULT_MODULAR_GUARD, global = true)]
    pub modular_guard: usize,
    /// Column index (thm12, c5).
    #[arg(short = 'k', global = true)]
    pub k: Option<usize>,
    /// Second exponent of thm9; all of 1..=e when absent.
    #[arg(short = 'f', global = true)]
    pub f: Option<u32>,
    /// Rows `n` of thm4 run over 0..=rows.
    #[arg(long, default_value_t = 6, global = true)]
    pub rows: usize,
    /// Random sequences drawn by thm4, prop2 and prop2a.
    #[arg(long, default_value_t = 10, global = true)]
    pub samples: usize,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Hypergeometric shifts `a,b,c,d,e,f` for the h2adic scan.
    #[arg(long, value_delimiter = ',', num_args = 6, global = true)]
    pub hyp: Option<Vec<u32>>,
    /// Pipelines for `compute d`, e.g. `recursive,inverse,poly`.
    #[arg(long, value_delimiter = ',', global = true)]
    pub pipelines: Option<Vec<String>>,
    /// Record wall-clock time in reports (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Opts {
    pub fn guards(&self) -> Guards {
        if self.unsafe_no_guard {
            Guards::unlimited()
        } else {
            Guards { exact: self.guard, modular: self.modular_guard }
        }
    }
}

/// Failure that maps to an exit code without a report.
#[derive(Debug)]
pub struct CliError(pub String);

impl From<romik_core::Error> for CliError {
    fn from(e: romik_core::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

/// Run a parsed command without touching stdout.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.opts.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Compute { target } => compute::run(*target, &cli.opts),
        Command::Verify { check } => verify::run_verify(check, &cli.opts),
        Command::Scan { conjecture } => verify::run_scan(conjecture, &cli.opts),
    })
}

/// Parse `args`, run, write the result and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::VERIFIED };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(CliError(msg)) => {
            eprintln!("romik: {msg}");
            return exit::USAGE;
        }
    };
    let written = match &cli.opts.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("romik: cannot write output: {e}");
        return exit::USAGE;
    }
    outcome.code
}
