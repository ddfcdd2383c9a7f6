//! Command-line front end for `redei-core`.
//!
//! Every subcommand produces one JSON report holding the command name, the
//! library version, an echo of the input, the result, and the wall time.
//! Exit status is 0 on success, 1 on a usage or input error, and 2 when a
//! self-check inside the report fails.

pub mod commands;
pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub use input::{FieldSpec, PointFile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] redei_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(redei_core::Error::InvariantViolated(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "redei",
    version,
    about = "Non-determined directions and partial ovoids over finite fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalOpts {
    /// Field GF(p^h) as `p,h`; checked against the point file
    #[arg(long, global = true, value_parser = FieldSpec::parse)]
    pub field: Option<FieldSpec>,
    /// Ambient dimension; checked against the point file
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// JSON point file
    #[arg(long, global = true)]
    pub points: Option<PathBuf>,
    /// Seed for randomized searches
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Time budget in seconds for searches
    #[arg(long, global = true, default_value_t = 600)]
    pub budget: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    #[serde(skip)]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Determined and non-determined directions of a point set
    Analyze,
    /// The surface f completing the Rédei polynomial, checked tuple by tuple
    DeriveF {
        /// Also print f as an expanded polynomial
        #[arg(long)]
        expand: bool,
    },
    /// Quadric type of f, predicted shape of N and all completions
    Classify,
    /// Search for a non-extendable set whose non-determined directions are a target
    SearchMaximal {
        #[arg(long)]
        q: u32,
        #[arg(long = "target-N", value_enum, default_value_t = Target::Conic)]
        target: Target,
        /// Set size; defaults to q² - 2
        #[arg(long)]
        size: Option<usize>,
    },
    /// Partial geometries T2*(K)
    Pg {
        #[command(subcommand)]
        command: PgCommand,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Conic,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PgOpts {
    /// Order of the plane carrying the arc (a power of 2)
    #[arg(long)]
    pub q: u32,
    /// `hyperoval` or `denniston:d`
    #[arg(long, default_value = "hyperoval", value_parser = ArcSpec::parse)]
    pub arc: ArcSpec,
}

#[derive(Subcommand, Debug)]
pub enum PgCommand {
    /// Build T2*(K) and report its size
    Build(PgOpts),
    /// Check the partial geometry axioms
    Verify(PgOpts),
    /// Random partial ovoids and their completions
    OvoidSearch {
        #[command(flatten)]
        opts: PgOpts,
        #[arg(long, default_value_t = 2)]
        deficiency: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcSpec {
    Hyperoval,
    Denniston(u32),
}

impl ArcSpec {
    pub fn parse(s: &str) -> Result<ArcSpec, String> {
        match s.split_once(':') {
            None if s == "hyperoval" => Ok(ArcSpec::Hyperoval),
            Some(("denniston", d)) => d
                .parse()
                .map(ArcSpec::Denniston)
                .map_err(|_| format!("bad Denniston degree {d:?}")),
            _ => Err(format!("unknown arc {s:?}; use hyperoval or denniston:d")),
        }
    }
}

/// A finished report and whether its self-checks passed.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    pub input: Value,
    pub result: Value,
    pub violations: Vec<String>,
    pub wall_time_ms: u128,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            2
        }
    }
}

/// What a subcommand hands back before timing is attached.
pub struct Outcome {
    pub input: Value,
    pub result: Value,
    pub violations: Vec<String>,
}

/// Parses `args` (program name first), runs the command, emits the report and
/// returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli).and_then(|r| emit(&cli.global, &r).map(|()| r)) {
        Ok(report) => report.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the parsed command and builds its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let (name, outcome) = match &cli.command {
        Command::Analyze => ("analyze", commands::analyze(&cli.global)?),
        Command::DeriveF { expand } => ("derive-f", commands::derive_f(&cli.global, *expand)?),
        Command::Classify => ("classify", commands::classify(&cli.global)?),
        Command::SearchMaximal { q, target, size } => (
            "search-maximal",
            commands::search_maximal(&cli.global, *q, *target, *size)?,
        ),
        Command::Pg { command } => match command {
            PgCommand::Build(o) => ("pg build", commands::pg_build(o)?),
            PgCommand::Verify(o) => ("pg verify", commands::pg_verify(o)?),
            PgCommand::OvoidSearch {
                opts,
                deficiency,
                trials,
            } => (
                "pg ovoid-search",
                commands::pg_ovoid_search(&cli.global, opts, *deficiency, *trials)?,
            ),
        },
    };
    Ok(Report {
        command: name.into(),
        version: VERSION,
        input: outcome.input,
        result: outcome.result,
        violations: outcome.violations,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn emit(global: &GlobalOpts, report: &Report) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    match &global.json {
        Some(path) => std::fs::write(path, text + "\n").map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
    }
}
