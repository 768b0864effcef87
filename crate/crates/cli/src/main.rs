//! `cohomology`: a batch workbench for exact cohomology computations.
//!
//! Exit status 0 means the computation finished and every checked property
//! held, 1 means a checked property failed, 2 means the input was invalid.

mod commands;
mod document;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::json;

use commands::{Command, Limits};
use report::{classify, render_table, Status};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(
    name = "cohomology",
    version,
    about = "Exact group cohomology workbench"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Highest degree computed where a command ranges over degrees
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Bound on the vertical extent of Čech double complexes
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Add wall-clock timing to the report (makes output run-dependent)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_degree: cli.max_degree,
        bound: cli.bound,
    };
    let start = Instant::now();
    match commands::dispatch(&cli.command, limits) {
        Ok(mut r) => {
            if cli.timing {
                r.value["timing"] = json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
            }
            let text = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&r.value).expect("reports serialize") + "\n"
                }
                Format::Table => render_table(&r.value),
            };
            print!("{text}");
            ExitCode::from(r.status.code())
        }
        Err(e) => {
            let status = classify(&e);
            let kind = if status == Status::Invalid {
                "invalid input"
            } else {
                "computation failed"
            };
            eprintln!("error ({kind}): {e:#}");
            ExitCode::from(status.code())
        }
    }
}
