//! The `invgal` command line: argument parsing, group specs, and deterministic reports.

mod commands;
mod report;
pub mod spec;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::SCHEMA_VERSION;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed group specification at byte {pos}: {msg}")]
    Spec { pos: usize, msg: String },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error(transparent)]
    Core(#[from] invgal::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn is_exhaustion(&self) -> bool {
        matches!(self, CliError::Core(e) if e.is_exhaustion())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Any,
    Symmetric,
    Alternating,
}

#[derive(Debug, Parser)]
#[command(
    name = "invgal",
    version,
    about = "Rigidity, braid orbits, ramification data, Bogomolov multipliers and Noether's problem for cyclic groups"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Group: S5, A4, D4, Q8, Z/6xZ/2, or gens:(1 2);(1 2 3)
    #[arg(long, global = true)]
    group: Option<String>,
    /// Degree for gens: groups (inferred when absent) or for monodromy data
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Comma-separated class labels, e.g. 2A,3A,4A
    #[arg(long, global = true)]
    classes: Option<String>,
    /// Tuple length
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Coefficient bound for norm searches
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Candidate budget for searches
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Largest group order whose elements may be listed
    #[arg(long, global = true)]
    enumeration_bound: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads (output does not depend on it)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Accepted for compatibility; nothing here is randomized
    #[arg(long, global = true)]
    seedless: bool,
    /// Report wall-clock time where a report has an elapsed_ms field
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Conjugacy classes
    Classes,
    /// Rational conjugacy classes
    RationalClasses,
    /// Nielsen tuples for --classes, or all of ni_r for --r
    Nielsen,
    /// Whether the Nielsen set of --classes has one element
    Rigid,
    /// Full rigidity certificate for --classes
    Certify,
    /// Braid orbits on ni_r, optionally restricted to the multiset --classes
    BraidOrbits,
    /// Realize a ramification datum in S_n
    Monodromy {
        /// Cycle types separated by ';', parts by ',', e.g. "4;3,1;2,1,1"
        #[arg(long)]
        types: String,
        #[arg(long, value_enum, default_value = "any")]
        target: TargetArg,
    },
    /// H^2(G, Q/Z) and the Bogomolov multiplier
    Bogomolov,
    /// Noether's problem for Z/n: a single n or a range a..b
    NoetherCyclic { n: String },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(message: String) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome::failure(text),
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::failure(format!("error: cannot start worker pool: {e}\n")),
    };
    pool.install(|| commands::dispatch(&cli))
}
