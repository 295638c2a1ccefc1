use std::path::Path;

use subscreen::csvio::read_numeric_csv;
use subscreen::numerics::Matrix;

use crate::error::{CliError, CliResult};

/// A design matrix and response read from CSV files.
pub struct Dataset {
    pub x: Matrix,
    pub y: Vec<f64>,
    pub names: Option<Vec<String>>,
}

pub fn load_dataset(x_path: &Path, y_path: &Path) -> CliResult<Dataset> {
    let xt = read_numeric_csv(x_path)?;
    let yt = read_numeric_csv(y_path)?;
    if yt.n_cols() != 1 {
        return Err(subscreen::Error::Parse {
            path: y_path.to_path_buf(),
            line: yt.lines[0],
            reason: format!("response file must have one column, found {}", yt.n_cols()),
        }
        .into());
    }
    if yt.n_rows() != xt.n_rows() {
        return Err(CliError::Mismatch(format!(
            "{} has {} rows but {} has {}",
            y_path.display(),
            yt.n_rows(),
            x_path.display(),
            xt.n_rows()
        )));
    }
    Ok(Dataset {
        x: xt.to_matrix()?,
        y: yt.rows.iter().map(|r| r[0]).collect(),
        names: xt.header,
    })
}

/// Parses `"1-10,15"` (1-based, inclusive) into sorted distinct 1-based
/// row numbers no larger than `n`.
pub fn parse_row_ranges(spec: &str, n: usize) -> CliResult<Vec<usize>> {
    let bad = |part: &str| CliError::Usage(format!("--test-rows: cannot parse {part:?}"));
    let mut rows = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (part, part),
        };
        let lo: usize = lo.parse().map_err(|_| bad(part))?;
        let hi: usize = hi.parse().map_err(|_| bad(part))?;
        if lo == 0 || hi < lo {
            return Err(bad(part));
        }
        if hi > n {
            return Err(CliError::Mismatch(format!(
                "--test-rows: row {hi} is beyond the {n} data rows"
            )));
        }
        rows.extend(lo..=hi);
    }
    rows.sort_unstable();
    rows.dedup();
    if rows.is_empty() {
        return Err(bad(spec));
    }
    Ok(rows)
}

/// Splits rows into (kept, held out).
pub fn split_rows(
    x: &Matrix,
    y: &[f64],
    held: &[usize],
) -> ((Matrix, Vec<f64>), (Matrix, Vec<f64>)) {
    let keep: Vec<usize> = (0..x.rows())
        .filter(|i| held.binary_search(i).is_err())
        .collect();
    let pick = |rows: &[usize]| (x.select_rows(rows), rows.iter().map(|&i| y[i]).collect());
    (pick(&keep), pick(held))
}
