//! `subscreen`: screen CSV data, run simulation grids, and call the
//! exhaustive best-subset oracle.
//!
//! Exit codes: 0 success, 1 I/O or runtime failure, 2 malformed input or
//! config, 3 dimension mismatch, 4 enumeration cap exceeded.

mod data;
mod error;
mod manifest;
mod oracle;
mod output;
mod screen;
mod simulate;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subscreen::experiments::MethodSettings;
use subscreen::subset::DEFAULT_ENUMERATION_CAP;

use crate::error::{CliError, CliResult};
use crate::manifest::{Resolved, RunManifest};
use crate::oracle::OracleConfig;
use crate::output::write_json;
use crate::screen::ScreenConfig;

#[derive(Parser)]
#[command(
    name = "subscreen",
    version,
    about = "Best-subset screening by iterative hard thresholding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select M columns of a CSV design for a CSV response.
    Screen(ScreenArgs),
    /// Run a Monte Carlo experiment described by a JSON config.
    Simulate(SimulateArgs),
    /// Exact best subset of size M by enumeration.
    Oracle(OracleArgs),
    /// Rerun a previous command from its manifest.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct Shared {
    /// Master seed (recorded in the manifest; overrides a config's seed).
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (screen, oracle) or directory (simulate).
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    workers: Option<usize>,
    /// Relative RSS decrease below which the iteration stops.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Iteration cap of the thresholding drivers.
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Args)]
struct ScreenArgs {
    /// Design matrix CSV (optional header row).
    #[arg(long)]
    x: PathBuf,
    /// Response CSV with one column.
    #[arg(long)]
    y: PathBuf,
    /// sis, isis, fs, oss, foss, or a combined name such as foss-sis.
    #[arg(long, default_value = "foss-fs")]
    method: String,
    /// Starting screener for --method oss or foss: sis, isis or fs.
    #[arg(long)]
    init: Option<String>,
    /// Number of columns to keep [default: 20, capped at min(n - 1, p)].
    #[arg(long = "m", short = 'M')]
    m: Option<usize>,
    /// ISIS round size [default: max(1, ceil(M / 5))].
    #[arg(long)]
    isis_batch: Option<usize>,
    /// Rows held out for a test error, 1-based ranges such as 151-200,205.
    #[arg(long, conflicts_with_all = ["x_test", "y_test"])]
    test_rows: Option<String>,
    #[arg(long, requires = "y_test")]
    x_test: Option<PathBuf>,
    #[arg(long, requires = "x_test")]
    y_test: Option<PathBuf>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct SimulateArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    #[arg(long = "m", short = 'M')]
    m: usize,
    /// Largest number of subsets to enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct ReplayArgs {
    /// Manifest written by an earlier run.
    manifest: PathBuf,
    /// Where to write this run's outputs.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    workers: Option<usize>,
}

const DEFAULT_M: usize = 20;

fn absolute(p: &Path) -> PathBuf {
    p.canonicalize().unwrap_or_else(|_| p.to_path_buf())
}

fn settings(shared: &Shared, isis_batch: Option<usize>) -> MethodSettings {
    MethodSettings {
        isis_batch,
        rel_tol: shared.rel_tol,
        max_iter: shared.max_iter,
    }
}

fn resolve_screen(a: &ScreenArgs) -> CliResult<ScreenConfig> {
    let method = screen::resolve_method(&a.method, a.init.as_deref())?;
    let m = match a.m {
        Some(m) => m,
        None => {
            // Peek at the shape so the default fits small inputs.
            let t = subscreen::csvio::read_numeric_csv(&a.x)?;
            let budget = t.n_rows().saturating_sub(1).min(t.n_cols()).max(1);
            if budget < DEFAULT_M {
                eprintln!("note: M defaults to {budget} = min(n - 1, p) for this input");
            }
            DEFAULT_M.min(budget)
        }
    };
    let test_rows = a
        .test_rows
        .as_deref()
        .map(|s| data::parse_row_ranges(s, usize::MAX))
        .transpose()?;
    Ok(ScreenConfig {
        x_path: absolute(&a.x),
        y_path: absolute(&a.y),
        method,
        m,
        test_rows,
        x_test: a.x_test.as_deref().map(absolute),
        y_test: a.y_test.as_deref().map(absolute),
        settings: settings(&a.shared, a.isis_batch),
        seed: a.shared.seed.unwrap_or(0),
    })
}

fn resolve_simulate(a: &SimulateArgs) -> CliResult<Resolved> {
    let mut cfg = simulate::load_config(&a.config)?;
    if let Some(s) = a.shared.seed {
        cfg.seed = s;
    }
    if a.shared.rel_tol.is_some() {
        cfg.rel_tol = a.shared.rel_tol;
    }
    if a.shared.max_iter.is_some() {
        cfg.max_iter = a.shared.max_iter;
    }
    Ok(Resolved::Simulate(cfg))
}

fn execute(resolved: &Resolved, out: &Path, workers: Option<usize>) -> CliResult<Vec<PathBuf>> {
    match resolved {
        Resolved::Screen(c) => screen::execute(c, out),
        Resolved::Simulate(c) => simulate::execute(c, out, workers),
        Resolved::Oracle(c) => oracle::execute(c, out),
    }
}

/// Executes `resolved` and writes its manifest.
fn run_and_record(resolved: Resolved, out: &Path, workers: Option<usize>) -> CliResult<PathBuf> {
    if let Some(0) = workers {
        return Err(CliError::Usage("--workers must be at least 1".to_string()));
    }
    let started = manifest::now_ms();
    let outputs = execute(&resolved, out, workers)?;
    let path = manifest::path_for(&resolved, out);
    let m = RunManifest {
        invocation: std::env::args().collect(),
        seed: resolved.seed(),
        resolved,
        version: env!("CARGO_PKG_VERSION").to_string(),
        workers,
        started_unix_ms: started,
        finished_unix_ms: manifest::now_ms(),
        outputs: outputs.iter().map(|p| absolute(p)).collect(),
    };
    write_json(&path, &m)?;
    Ok(path)
}

fn dispatch(cli: Cli) -> CliResult<PathBuf> {
    match cli.command {
        Command::Screen(a) => {
            let cfg = resolve_screen(&a)?;
            run_and_record(Resolved::Screen(cfg), &a.shared.out, a.shared.workers)
        }
        Command::Simulate(a) => {
            let resolved = resolve_simulate(&a)?;
            run_and_record(resolved, &a.shared.out, a.shared.workers)
        }
        Command::Oracle(a) => {
            let cfg = OracleConfig {
                x_path: absolute(&a.x),
                y_path: absolute(&a.y),
                m: a.m,
                cap: a.cap,
                seed: a.shared.seed.unwrap_or(0),
            };
            run_and_record(Resolved::Oracle(cfg), &a.shared.out, a.shared.workers)
        }
        Command::Replay(a) => {
            let m = manifest::load(&a.manifest)?;
            run_and_record(m.resolved, &a.out, a.workers.or(m.workers))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(manifest) => {
            eprintln!("manifest: {}", manifest.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
