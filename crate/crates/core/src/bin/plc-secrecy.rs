//! Command-line front end: `sweep`, `preset` and `validate`.
//!
//! Exit status is 0 when every row evaluated, 1 when at least one row
//! failed and 2 for configuration errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use plc_secrecy::sweep::{self, SweepRow, SweepSpec};
use plc_secrecy::Error;

#[derive(Parser)]
#[command(version, about = "Secrecy metrics of pinhole power-line networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a TOML file.
    Sweep {
        config: PathBuf,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named figure preset (fig3 ... fig8).
    Preset {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Monte Carlo trials per point.
        #[arg(long)]
        samples: Option<u64>,
        /// Gauss-Hermite order.
        #[arg(long)]
        quad_order: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Sweep points evaluated in parallel.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Check a TOML file and print the fully resolved configuration.
    Validate { config: PathBuf },
}

const ROW_ERROR: u8 = 1;
const CONFIG_ERROR: u8 = 2;

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CONFIG_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Sweep { config, out } => {
            let spec = sweep::load_config(&config)?;
            emit(&[spec], out)
        }
        Command::Preset {
            name,
            out,
            samples,
            quad_order,
            seed,
            workers,
        } => {
            let mut series = sweep::preset(&name)?;
            for spec in &mut series {
                if let Some(k) = samples {
                    spec.monte_carlo.samples = k;
                }
                if let Some(s) = seed {
                    spec.monte_carlo.seed = s;
                }
                if let Some(l) = quad_order {
                    spec.scenario.quad_order = l;
                }
                if let Some(w) = workers {
                    spec.workers = w;
                }
            }
            emit(&series, out)
        }
        Command::Validate { config } => {
            let spec = sweep::load_config(&config)?;
            print!("{}", sweep::dump_config(&spec)?);
            eprintln!("ok: {} rows", spec.row_count());
            Ok(0)
        }
    }
}

fn emit(series: &[SweepSpec], out: Option<PathBuf>) -> Result<u8, Error> {
    let rows = sweep::run_series(series)?;
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    sweep::write_csv(&rows, BufWriter::new(sink))?;
    let failed: Vec<&SweepRow> = rows.iter().filter(|r| r.is_error()).collect();
    for row in &failed {
        if let Err(msg) = &row.outcome {
            eprintln!("row {} {}: {msg}", row.axis_value, row.method_column());
        }
    }
    Ok(if failed.is_empty() { 0 } else { ROW_ERROR })
}
