use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::numerics::StandardizedProblem;
use crate::subset::step::{foss_step_with_set, oss_step_unchecked, rss_unchecked};
use crate::subset::{
    check_len, Algorithm, IterationOptions, ScreeningResult, SparseCoef, Termination,
};

/// Iterates `T_M` (OSS) or `T_M^F` (FOSS) from `init` until the objective
/// stops decreasing.
///
/// Stops when the relative decrease of the RSS falls below `opts.rel_tol`,
/// when an iterate is reproduced exactly, when FOSS revisits an earlier
/// active set (reported as [`Termination::Cycle`], returning the best
/// iterate seen), or after `opts.max_iter` steps.
///
/// `init` may have more than `m` nonzeros; the first step thresholds it. Its
/// objective is only recorded in the trace when it is feasible, since the
/// monotone decrease is only guaranteed from feasible points.
pub fn run(
    problem: &StandardizedProblem,
    init: &SparseCoef,
    m: usize,
    opts: &IterationOptions,
) -> Result<ScreeningResult> {
    check_len(problem.p(), init)?;
    if m == 0 {
        return Err(Error::invalid("M", "must be at least 1"));
    }
    opts.validate()?;

    let mut current = init.clone().with_bound(m);
    let mut trace = Vec::new();
    let mut best: Option<(f64, SparseCoef)> = None;
    if current.is_feasible() {
        let r = rss_unchecked(problem, &current);
        trace.push(r);
        best = Some((r, current.clone()));
    }

    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut termination = Termination::MaxIter;
    let mut iterations = 0;

    for k in 1..=opts.max_iter {
        iterations = k;
        let (next, set) = match opts.algorithm {
            Algorithm::Oss => (oss_step_unchecked(problem, &current), None),
            Algorithm::Foss => {
                let (c, s) = foss_step_with_set(problem, &current);
                (c, Some(s))
            }
        };
        let r = rss_unchecked(problem, &next);
        let prev = trace.last().copied();
        trace.push(r);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, next.clone()));
        }

        let fixed_point = next.beta() == current.beta();
        // The FOSS iterate is a function of the thresholded support alone, so
        // a repeated support means the sequence repeats from here on.
        let revisited = match set {
            Some(s) => !visited.insert(s),
            None => false,
        };
        current = next;

        if fixed_point {
            termination = Termination::Converged;
            break;
        }
        if revisited {
            termination = Termination::Cycle;
            break;
        }
        if let Some(prev) = prev {
            if relative_decrease(prev, r) < opts.rel_tol {
                termination = Termination::Converged;
                break;
            }
        }
    }

    let (rss, coef) = match (termination, best) {
        (Termination::Cycle, Some((r, c))) => (r, c),
        _ => (*trace.last().expect("at least one iteration"), current),
    };
    Ok(ScreeningResult {
        coef,
        rss,
        rss_trace: trace,
        iterations,
        termination,
    })
}

fn relative_decrease(prev: f64, cur: f64) -> f64 {
    if prev > 0.0 {
        (prev - cur) / prev
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{standardize, Matrix};
    use crate::subset::{exhaustive_best_subset, refit};

    fn problem() -> StandardizedProblem {
        let x = Matrix::from_fn(12, 5, |i, j| {
            (((i * 31 + j * 17) % 11) as f64 - 5.0) + 0.3 * ((i * j) % 4) as f64
        });
        let y: Vec<f64> = (0..12)
            .map(|i| 2.0 * x.get(i, 1) - 1.5 * x.get(i, 3) + 0.1 * ((i * 7) % 5) as f64)
            .collect();
        standardize(&x, &y).unwrap()
    }

    #[test]
    fn starting_at_the_optimum_converges_immediately() {
        let prob = problem();
        let best = exhaustive_best_subset(&prob, 2).unwrap();
        for opts in [IterationOptions::oss(), IterationOptions::foss()] {
            let res = run(&prob, &best.coef, 2, &opts).unwrap();
            assert_eq!(res.termination, Termination::Converged);
            assert_eq!(res.iterations, 1);
            assert_eq!(res.active(), best.active());
            for (a, b) in res.coef.beta().iter().zip(best.coef.beta()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn infeasible_start_is_thresholded_and_trace_is_monotone() {
        let prob = problem();
        let full = refit(&prob, &[0, 1, 2, 3, 4], 2);
        assert!(!full.is_feasible());
        let res = run(&prob, &full, 2, &IterationOptions::oss()).unwrap();
        assert!(res.coef.nnz() <= 2);
        assert_eq!(res.rss_trace.len(), res.iterations);
        for w in res.rss_trace.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-9));
        }
    }

    #[test]
    fn max_iter_is_reported() {
        let prob = problem();
        let opts = IterationOptions {
            max_iter: 1,
            rel_tol: 0.0,
            algorithm: Algorithm::Oss,
        };
        let res = run(&prob, &SparseCoef::zeros(5, 2), 2, &opts).unwrap();
        assert_eq!(res.iterations, 1);
        assert_eq!(res.termination, Termination::MaxIter);
    }

    #[test]
    fn rejects_zero_budget() {
        let prob = problem();
        assert!(run(&prob, &SparseCoef::zeros(5, 1), 0, &IterationOptions::oss()).is_err());
    }
}
