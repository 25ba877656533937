// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end: trace ingestion, quantization, inference and
//! JSON output.

#![forbid(unsafe_code)]

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod quantize;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use chrono::NaiveDate;
use clap::{Parser, Subcommand};
use residency::{Algorithm, Mode, QInterpretation};

pub use error::{CliError, Result};
use ingest::Format;

#[derive(Debug, Parser)]
#[command(
    name = "residency",
    version,
    about = "Infer residence histories from location traces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Infer one residence history per user.
    Infer {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_with::<Format>)]
        format: Format,
        #[arg(long, value_parser = parse_with::<Algorithm>)]
        algorithm: Algorithm,
        /// Minimum residence length in units. Not used by `modal`.
        #[arg(long)]
        rho: Option<usize>,
        #[arg(long, default_value = "full", value_parser = parse_with::<Mode>)]
        mode: Mode,
        /// How the run-level solver reads its predecessor set.
        #[arg(long, default_value = "exclusive", value_parser = parse_with::<QInterpretation>)]
        q: QInterpretation,
        /// Interval length in units for `modal`.
        #[arg(long)]
        interval: Option<usize>,
        #[arg(long, default_value_t = 1)]
        unit_days: u32,
        /// Inclusive first and last date.
        #[arg(long, num_args = 2, value_names = ["START", "END"], value_parser = parse_with::<NaiveDate>)]
        range: Option<Vec<NaiveDate>>,
        /// Output path, `-` for stdout.
        #[arg(long)]
        output: PathBuf,
    },
    /// Generate a synthetic trace and its truth.
    Gen {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: PathBuf,
        /// Defaults to the output path with `.truth.json` appended.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Score inferred histories against truth.
    Eval {
        #[arg(long)]
        inferred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long, default_value_t = 30)]
        tolerance: usize,
    },
    /// Compare solvers on generated instances.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Also write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_with<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Infer {
            input,
            format,
            algorithm,
            rho,
            mode,
            q,
            interval,
            unit_days,
            range,
            output,
        } => commands::infer(&commands::InferArgs {
            input,
            format,
            algorithm,
            rho,
            mode,
            q,
            interval,
            unit_days,
            range: range.map(|r| (r[0], r[1])),
            output,
        }),
        Command::Gen {
            config,
            seed,
            output,
            truth,
        } => commands::gen(&config, seed, &output, truth.as_deref()),
        Command::Eval {
            inferred,
            truth,
            tolerance,
        } => {
            let text = commands::eval(&inferred, &truth, tolerance)?;
            commands::write_file("-".as_ref(), &text)
        }
        Command::Bench { config, json } => {
            let (text, report) = commands::bench(&config)?;
            if let Some(path) = json {
                commands::write_file(&path, &report)?;
            }
            commands::write_file("-".as_ref(), &text)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors go to stderr.
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
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
