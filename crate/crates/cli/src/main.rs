//! Command-line front end: hashing, datapath simulation, Table 1
//! reproduction, brute-force cracking and a small benchmark.
//!
//! Exit codes: 0 success, 1 operational failure, 2 usage error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "sha1-assp", version, about = "SHA-1 datapath model and throughput harness")]
pub struct Cli {
    /// Emit only machine-readable record lines on stdout.
    #[arg(long, global = true)]
    pub machine: bool,

    /// key=value file with defaults for `ni` and `ts_ns`.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print SHA-1 digests of files (or stdin).
    Hash {
        /// Input files; `-` or none reads stdin.
        files: Vec<PathBuf>,
        /// Hash only the first N bits of each input.
        #[arg(long, value_name = "N")]
        bits: Option<u64>,
        /// Check a test-vector file instead of hashing inputs.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["files", "bits", "bundled"])]
        vectors: Option<PathBuf>,
        /// Check the bundled conformance vectors.
        #[arg(long, conflicts_with_all = ["files", "bits"])]
        bundled: bool,
    },
    /// Hash one input on the cycle-accurate datapath model.
    Simulate {
        /// Input file; `-` or none reads stdin.
        input: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        bits: Option<u64>,
        /// Write the per-cycle trace here.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Recompute Table 1 throughput and utilization from its own columns.
    ReproduceTable {
        /// Allowed |computed - published| throughput, Gbps.
        #[arg(long, default_value_t = 0.001)]
        tolerance: f64,
        /// Also write the table as delimiter-separated text.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
        #[arg(long, default_value_t = ',')]
        delimiter: char,
    },
    /// Brute-force a digest over a fixed-length keyspace.
    Crack {
        /// Target digest, 40 hex characters.
        #[arg(long)]
        target: String,
        /// Preset (numeric, lower, upper, alpha, alnum, hex) or literal symbols.
        #[arg(long, default_value = "numeric")]
        alphabet: String,
        #[arg(long)]
        length: u32,
        #[arg(long)]
        workers: Option<usize>,
        /// core or sim
        #[arg(long, default_value = "core")]
        engine: String,
        #[arg(long)]
        ni: Option<u32>,
        #[arg(long)]
        ts_ns: Option<f64>,
    },
    /// Measure software hash rates next to the modeled device rate.
    Bench {
        /// Measurement time per engine, seconds.
        #[arg(long, default_value_t = 1.0)]
        seconds: f64,
        #[arg(long)]
        ni: Option<u32>,
        #[arg(long)]
        ts_ns: Option<f64>,
    },
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failure(format!("{e:#}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = e.code();
            match e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Failure(msg) if !msg.is_empty() => eprintln!("error: {msg}"),
                CliError::Failure(_) => {}
            }
            ExitCode::from(code)
        }
    }
}
