use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use subscreen::experiments::{DesignSpec, Experiment, ExperimentConfig};

use crate::error::{io_err, CliError, CliResult};
use crate::output::create;

pub const RECORDS_FILE: &str = "records.csv";
pub const AGGREGATE_FILE: &str = "aggregate.csv";

/// Reads an experiment config; a relative base-design path is taken
/// relative to the config file and made absolute.
pub fn load_config(path: &Path) -> CliResult<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut cfg: ExperimentConfig =
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })?;
    if let DesignSpec::Kronecker {
        base_design_path, ..
    } = &mut cfg.design
    {
        if base_design_path.is_relative() {
            let dir = path.parent().unwrap_or(Path::new("."));
            *base_design_path = dir.join(&*base_design_path);
        }
        if let Ok(abs) = base_design_path.canonicalize() {
            *base_design_path = abs;
        }
    }
    Ok(cfg)
}

/// Runs the experiment and writes the per-repetition and aggregate CSVs
/// into `out_dir`. Prints the aggregate table to stdout.
pub fn execute(
    cfg: &ExperimentConfig,
    out_dir: &Path,
    workers: Option<usize>,
) -> CliResult<Vec<PathBuf>> {
    let exp = Experiment::new(cfg.clone())?;
    if exp.non_binary_entries() > 0 {
        eprintln!(
            "warning: base design has {} entries other than +1/-1",
            exp.non_binary_entries()
        );
    }
    let out = exp.run(workers)?;
    for f in &out.failures {
        eprintln!("warning: repetition {} excluded: {}", f.rep, f.reason);
    }

    let records_path = out_dir.join(RECORDS_FILE);
    let mut w = create(&records_path)?;
    subscreen::experiments::write_records(&mut w, &out.records, exp.true_support())?;
    w.flush().map_err(io_err(&records_path))?;

    let table_path = out_dir.join(AGGREGATE_FILE);
    let mut w = create(&table_path)?;
    out.table.write_csv(&mut w)?;
    w.flush().map_err(io_err(&table_path))?;

    println!(
        "{:<10} {:>7} {:>14} {:>10} {:>5} {:>5}",
        "method", "CR", "AO", "mean_iter", "reps", "excl"
    );
    for r in &out.table.rows {
        println!(
            "{:<10} {:>7.3} {:>14.4} {:>10.2} {:>5} {:>5}",
            r.method.name(),
            r.cr(),
            r.ao,
            r.mean_iterations,
            r.repetitions,
            r.exclusions
        );
    }
    Ok(vec![records_path, table_path])
}
