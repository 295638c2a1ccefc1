use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use subscreen::numerics::standardize;
use subscreen::subset::{exhaustive_best_subset_with_cap, subset_count};

use crate::data::load_dataset;
use crate::error::CliResult;
use crate::output::write_json;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub x_path: PathBuf,
    pub y_path: PathBuf,
    #[serde(rename = "M")]
    pub m: usize,
    pub cap: u64,
    pub seed: u64,
}

#[derive(Serialize)]
struct OracleReport {
    #[serde(rename = "M")]
    m: usize,
    n: usize,
    p: usize,
    /// `C(p', M)` over the `p'` non-constant columns, as a decimal string.
    subsets: String,
    selected: Vec<usize>,
    intercept: f64,
    coefficients: Vec<f64>,
    rss: f64,
}

pub fn execute(cfg: &OracleConfig, out: &Path) -> CliResult<Vec<PathBuf>> {
    let data = load_dataset(&cfg.x_path, &cfg.y_path)?;
    let problem = standardize(&data.x, &data.y)?;
    let best = exhaustive_best_subset_with_cap(&problem, cfg.m, cfg.cap)?;
    let candidates = (0..problem.p())
        .filter(|&j| !problem.is_degenerate(j))
        .count();
    let (intercept, slopes) = problem.to_original_scale(best.coef.beta());
    let report = OracleReport {
        m: cfg.m,
        n: problem.n(),
        p: problem.p(),
        subsets: subset_count(candidates, cfg.m.min(candidates)).to_string(),
        selected: best.active().iter().map(|j| j + 1).collect(),
        intercept,
        coefficients: best.active().iter().map(|&j| slopes[j]).collect(),
        rss: best.rss,
    };
    write_json(out, &report)?;
    Ok(vec![out.to_path_buf()])
}
