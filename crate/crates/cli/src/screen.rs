use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use subscreen::experiments::{fit_methods, Method, MethodSettings};
use subscreen::numerics::{standardize, Matrix, StandardizedProblem};
use subscreen::subset::Termination;

use crate::data::{load_dataset, split_rows};
use crate::error::{CliError, CliResult};
use crate::output::write_json;

/// Everything needed to rerun `screen`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScreenConfig {
    pub x_path: PathBuf,
    pub y_path: PathBuf,
    pub method: Method,
    #[serde(rename = "M")]
    pub m: usize,
    /// 1-based rows of the input held out for testing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_rows: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_test: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_test: Option<PathBuf>,
    #[serde(flatten)]
    pub settings: MethodSettings,
    pub seed: u64,
}

#[derive(Serialize)]
struct Coefficient {
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    value: f64,
}

#[derive(Serialize)]
struct TestReport {
    rows: usize,
    mse: f64,
}

#[derive(Serialize)]
struct ScreenReport {
    method: Method,
    #[serde(rename = "M")]
    m: usize,
    n: usize,
    p: usize,
    /// 1-based column indices.
    selected: Vec<usize>,
    intercept: f64,
    coefficients: Vec<Coefficient>,
    rss: f64,
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    termination: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    constant_columns: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    test: Option<TestReport>,
}

/// Maps `--method` and `--init` to a harness method: `oss`/`foss` combine
/// with the initializer, everything else names a method directly.
pub fn resolve_method(method: &str, init: Option<&str>) -> CliResult<Method> {
    let m = method.trim().to_ascii_lowercase();
    if m == "oss" || m == "foss" {
        let init = init.unwrap_or("fs");
        return Ok(format!("{m}-{init}").parse::<Method>()?);
    }
    if init.is_some() {
        return Err(CliError::Usage(
            "--init only applies to --method oss or foss".to_string(),
        ));
    }
    Ok(m.parse::<Method>()?)
}

pub fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::Converged => "converged",
        Termination::MaxIter => "max_iter",
        Termination::Cycle => "cycle",
    }
}

fn prediction_mse(problem: &StandardizedProblem, beta: &[f64], x: &Matrix, y: &[f64]) -> f64 {
    let (intercept, slopes) = problem.to_original_scale(beta);
    let fit = x.mul_vec(&slopes);
    let sse: f64 = y
        .iter()
        .zip(&fit)
        .map(|(yi, fi)| (yi - intercept - fi).powi(2))
        .sum();
    sse / y.len() as f64
}

pub fn execute(cfg: &ScreenConfig, out: &Path) -> CliResult<Vec<PathBuf>> {
    let data = load_dataset(&cfg.x_path, &cfg.y_path)?;
    let (train, test) = match (&cfg.test_rows, &cfg.x_test, &cfg.y_test) {
        (Some(rows), None, None) => {
            let n = data.x.rows();
            if let Some(&r) = rows.iter().find(|&&r| r == 0 || r > n) {
                return Err(CliError::Mismatch(format!(
                    "test row {r} is outside the {n} data rows"
                )));
            }
            let held: Vec<usize> = rows.iter().map(|r| r - 1).collect();
            let (train, test) = split_rows(&data.x, &data.y, &held);
            (train, Some(test))
        }
        (None, Some(xt), Some(yt)) => {
            let t = load_dataset(xt, yt)?;
            if t.x.cols() != data.x.cols() {
                return Err(CliError::Mismatch(format!(
                    "{} has {} columns but {} has {}",
                    xt.display(),
                    t.x.cols(),
                    cfg.x_path.display(),
                    data.x.cols()
                )));
            }
            ((data.x, data.y), Some((t.x, t.y)))
        }
        (None, None, None) => ((data.x, data.y), None),
        _ => {
            return Err(CliError::Usage(
                "give either --test-rows or both --x-test and --y-test".to_string(),
            ))
        }
    };

    let problem = standardize(&train.0, &train.1)?;
    let fit = fit_methods(&problem, &[cfg.method], cfg.m, &cfg.settings)?
        .pop()
        .expect("one method requested");
    let (intercept, slopes) = problem.to_original_scale(fit.coef.beta());
    let coefficients = fit
        .coef
        .active()
        .iter()
        .map(|&j| Coefficient {
            index: j + 1,
            name: data.names.as_ref().map(|n| n[j].clone()),
            value: slopes[j],
        })
        .collect();
    let test = test.map(|(x, y)| TestReport {
        rows: y.len(),
        mse: prediction_mse(&problem, fit.coef.beta(), &x, &y),
    });

    let report = ScreenReport {
        method: cfg.method,
        m: cfg.m,
        n: problem.n(),
        p: problem.p(),
        selected: fit.coef.active().iter().map(|j| j + 1).collect(),
        intercept,
        coefficients,
        rss: fit.rss,
        iterations: fit.iterations,
        termination: fit.termination.map(termination_name),
        constant_columns: (0..problem.p())
            .filter(|&j| problem.is_degenerate(j))
            .map(|j| j + 1)
            .collect(),
        test,
    };
    write_json(out, &report)?;
    Ok(vec![out.to_path_buf()])
}
