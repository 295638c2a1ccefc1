use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::initializers::FsPath;
use crate::numerics::StandardizedProblem;
use crate::subset::{run, Algorithm, IterationOptions, ScreeningResult};

/// Submodel sizes used as starting points: `M - [p/10]` to
/// `min(M + [p/10], n)`, clamped to `[1, min(n - 1, p)]`.
pub fn start_window(m: usize, n: usize, p: usize) -> RangeInclusive<usize> {
    let spread = p / 10;
    let cap = (n.saturating_sub(1)).min(p).max(1);
    let lo = m.saturating_sub(spread).clamp(1, cap);
    let hi = (m + spread).min(n).clamp(1, cap);
    lo..=hi.max(lo)
}

/// FOSS started from the least squares fit of every forward-stepwise
/// submodel in [`start_window`]; the run with the smallest final RSS wins
/// (ties: lexicographically smaller active set, then smaller start size).
///
/// Starts are evaluated in parallel; the reduction order does not depend on
/// scheduling.
pub fn multi_start_foss_fs(
    problem: &StandardizedProblem,
    m: usize,
    fs_path: &FsPath,
    opts: &IterationOptions,
) -> Result<ScreeningResult> {
    let window = start_window(m, problem.n(), problem.p());
    let available = fs_path.len();
    let sizes: Vec<usize> = window.filter(|&l| l <= available).collect();
    if sizes.is_empty() {
        return Err(Error::RankBudget {
            requested: m,
            available,
        });
    }
    let opts = IterationOptions {
        algorithm: Algorithm::Foss,
        ..*opts
    };

    let runs: Vec<ScreeningResult> = sizes
        .par_iter()
        .map(|&l| {
            let init = fs_path
                .estimator(l)
                .expect("size is within the available path");
            run(problem, init, m, &opts)
        })
        .collect::<Result<_>>()?;

    let best = runs
        .into_iter()
        .reduce(|a, b| {
            let a_wins = a.rss < b.rss || (a.rss == b.rss && a.active() <= b.active());
            if a_wins {
                a
            } else {
                b
            }
        })
        .expect("window is non-empty");
    Ok(best)
}
