//! Command-line front end: loads JSON inputs, runs the library checks and
//! emits ordered, reproducible reports.

pub mod commands;
pub mod input;

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vcoalg::par::Mode;
use vcoalg::{Caps, LawEntry, LawReport};

pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vcoalg::Error> for CliError {
    fn from(e: vcoalg::Error) -> Self {
        if e.is_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "vcoalg", version, about = "Checks and constructions for coalgebras over quantale-enriched categories")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Overrides the enumeration caps (maps, increasing sets, object size).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Adds wall-clock time to the report, which then differs between runs.
    #[arg(long, global = true)]
    pub timings: bool,
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Law checks on quantale, category and coalgebra files.
    Check { paths: Vec<PathBuf> },
    /// Hausdorff values between two subsets.
    Hausdorff {
        #[arg(long)]
        category: PathBuf,
        /// Comma-separated state names.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Levels of the final chain.
    Chain {
        #[arg(long, default_value = "bool")]
        quantale: String,
        /// `H`, `id`, or functor JSON.
        #[arg(long, default_value = "H")]
        functor: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Behavioural distances up to a depth.
    Behave {
        #[arg(long)]
        coalgebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Equalizer of two maps between coalgebras.
    Equalize {
        #[arg(long)]
        coalgebra: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// `x:a,y:b`.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Initial lift of a set-level coalgebra along a cone.
    Lift {
        #[arg(long)]
        coalgebra: PathBuf,
        /// Coalgebra files, paired in order with `--leg`.
        #[arg(long)]
        cone: Vec<PathBuf>,
        #[arg(long)]
        leg: Vec<String>,
    },
    /// Refutes every candidate embedding `H X → X`.
    Cantor {
        #[arg(long)]
        category: PathBuf,
        /// Images of the increasing sets, in report order; all maps if absent.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Checks the truncation cone against the `H` chain over two truth values.
    OmegaVerify {
        #[arg(long, default_value_t = 32)]
        depth: usize,
    },
    /// The map into `ℕ+∞` of an `H`-coalgebra over two truth values.
    Ana {
        #[arg(long)]
        coalgebra: PathBuf,
    },
    /// Seeded randomized law suites.
    Suite {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long)]
        suite: Option<String>,
    },
}

/// What a command produced, before rendering.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: LawReport,
    pub result: serde_json::Value,
    /// Rows for `--format csv`, header first.
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub passed: bool,
    pub checks: Vec<LawEntry>,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

pub struct Config {
    pub caps: Caps,
    pub seed: u64,
    pub mode: Mode,
}

impl Cli {
    pub fn config(&self) -> Config {
        let mut caps = Caps::default();
        if let Some(c) = self.cap {
            caps.maps = c;
            caps.increasing = c;
            caps.object = c;
        }
        let mode = if self.sequential { Mode::Sequential } else { Mode::Parallel };
        Config { caps, seed: self.seed, mode }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",") + "\n").collect()
}

pub fn render(report: &Report, table: Option<&[Vec<String>]>, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => match table {
            Some(t) => csv(t),
            None => {
                let mut rows = vec![vec!["law".to_string(), "holds".to_string(), "witness".to_string()]];
                rows.extend(report.checks.iter().map(|e| vec![e.law.clone(), e.holds.to_string(), e.witness.join(" ")]));
                csv(&rows)
            }
        },
        Format::Text => {
            let mut out = format!("{} {}\n", report.command.join(" "), if report.passed { "PASS" } else { "FAIL" });
            for e in &report.checks {
                let tag = if e.holds { "ok  " } else { "FAIL" };
                if e.witness.is_empty() {
                    out += &format!("{tag} {}\n", e.law);
                } else {
                    out += &format!("{tag} {}: {}\n", e.law, e.witness.join(", "));
                }
            }
            out + &serde_json::to_string(&report.result).expect("result serializes") + "\n"
        }
    }
}

/// Runs a parsed command line; returns the rendered output and exit code.
/// `argv` is echoed into the report without the program name.
pub fn run(cli: &Cli, argv: &[String]) -> Result<(String, i32), CliError> {
    let start = Instant::now();
    let cfg = cli.config();
    let out = commands::dispatch(&cli.command, &cfg)?;
    let passed = out.checks.all_pass();
    let report = Report {
        tool: "vcoalg",
        version: env!("CARGO_PKG_VERSION"),
        command: argv.to_vec(),
        passed,
        checks: out.checks.entries,
        result: out.result,
        elapsed_ms: cli.timings.then(|| start.elapsed().as_millis()),
    };
    Ok((render(&report, out.table.as_deref(), cli.format), if passed { 0 } else { 1 }))
}

/// Parses and runs `args` (program name first), mapping errors to exit codes.
pub fn main_with(args: Vec<String>) -> (String, String, i32) {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (text, String::new(), 0) } else { (String::new(), text, 2) };
        }
    };
    match run(&cli, &args[1.min(args.len())..]) {
        Ok((out, code)) => (out, String::new(), code),
        Err(e) => (String::new(), format!("{e}\n"), e.exit_code()),
    }
}
