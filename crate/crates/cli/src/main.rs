//! `weaksub`: batch driver for the verification suites and data tables.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or configuration errors. Machine output goes to stdout or `--out`; human
//! text goes to stderr.

mod output;
mod table;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weaksub_core::modforms::eigenform;

use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(
    name = "weaksub",
    version,
    about = "Verification suites for level-one eigenform L-functions"
)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand; identical settings give identical bytes.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Working precision in bits.
    #[arg(long, global = true, env = "WEAKSUB_PRECISION", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(53..=4096))]
    pub precision: u32,
    /// Seed of the single generator behind every randomized suite.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact q-expansion coefficients of the normalized eigenform of a weight.
    Eigenform {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Run one verification suite; exit 1 if any check fails.
    Verify(verify::VerifyArgs),
    /// Emit a data table.
    Table(table::TableArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hecke,
    Deligne,
    FfFactor,
    StIneq,
    JlwIneq,
    ThmA1,
    HpSeries,
    DenomScan,
    AfeKernel,
    Mollifier,
    Maxima,
    Minimax,
    Mertens,
    Ichino,
}

/// Failure that maps onto an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<weaksub_core::Error> for Failure {
    fn from(e: weaksub_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.run.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global() {
            eprintln!("error: cannot size thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let out = Output::new(cli.run.format, cli.run.out.clone());
    let result = match &cli.command {
        Command::Eigenform { weight, n } => cmd_eigenform(*weight, *n, &out).map(|_| true),
        Command::Verify(args) => verify::run(args, &cli.run, &out),
        Command::Table(args) => table::run(args, &cli.run, &out).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_eigenform(weight: u32, n: usize, out: &Output) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let f = eigenform(weight, n)?;
    match out.format {
        Format::Json => out.json(&f.to_json()),
        Format::Csv => {
            let rows: Vec<Vec<String>> = (1..=n as u64)
                .map(|i| vec![i.to_string(), f.coeff(i).expect("within truncation").to_string()])
                .collect();
            out.csv(&["n", "a_n"], &rows)
        }
    }
}
