use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::StandardizedProblem;
use crate::subset::step::{refit, rss_unchecked};
use crate::subset::{ScreeningResult, Termination};

pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

const BATCH: usize = 4096;

/// `C(p, m)` exactly.
pub fn subset_count(p: usize, m: usize) -> BigUint {
    if m > p {
        return BigUint::ZERO;
    }
    let m = m.min(p - m);
    let mut acc = BigUint::from(1u32);
    for i in 0..m {
        acc *= BigUint::from(p - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Global minimizer of the size-`m` best subset problem by enumeration,
/// with the default cap on the number of subsets.
pub fn exhaustive_best_subset(problem: &StandardizedProblem, m: usize) -> Result<ScreeningResult> {
    exhaustive_best_subset_with_cap(problem, m, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates every size-`m` subset of the non-degenerate columns, refits
/// each by minimum-norm least squares and keeps the smallest RSS; ties go to
/// the lexicographically smallest subset.
pub fn exhaustive_best_subset_with_cap(
    problem: &StandardizedProblem,
    m: usize,
    cap: u64,
) -> Result<ScreeningResult> {
    let (candidates, m) = enumeration_plan(problem, m, cap)?;

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut combos = candidates.iter().copied().combinations(m);
    loop {
        let batch: Vec<Vec<usize>> = combos.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let local = batch
            .into_par_iter()
            .map(|s| (subset_rss(problem, &s), s))
            .reduce_with(pick);
        if let Some(l) = local {
            best = Some(match best {
                Some(b) => pick(b, l),
                None => l,
            });
        }
    }

    let (rss, subset) = best.expect("at least one subset");
    let coef = refit(problem, &subset, m);
    Ok(ScreeningResult {
        coef,
        rss,
        rss_trace: vec![rss],
        iterations: 0,
        termination: Termination::Converged,
    })
}

/// RSS of every size-`m` subset of the non-degenerate columns, in
/// lexicographic order.
pub fn all_subset_rss(
    problem: &StandardizedProblem,
    m: usize,
    cap: u64,
) -> Result<Vec<(Vec<usize>, f64)>> {
    let (candidates, m) = enumeration_plan(problem, m, cap)?;
    let subsets: Vec<Vec<usize>> = candidates.into_iter().combinations(m).collect();
    Ok(subsets
        .into_par_iter()
        .map(|s| {
            let r = subset_rss(problem, &s);
            (s, r)
        })
        .collect())
}

fn enumeration_plan(
    problem: &StandardizedProblem,
    m: usize,
    cap: u64,
) -> Result<(Vec<usize>, usize)> {
    let p = problem.p();
    if m == 0 || m > p {
        return Err(Error::invalid("M", format!("must be in 1..={p}, got {m}")));
    }
    let candidates: Vec<usize> = (0..p).filter(|&j| !problem.is_degenerate(j)).collect();
    let m = m.min(candidates.len().max(1));
    let count = subset_count(candidates.len(), m);
    if count > BigUint::from(cap) {
        return Err(Error::EnumerationCap {
            p: candidates.len(),
            m,
            count,
            cap,
        });
    }
    Ok((candidates, m))
}

fn subset_rss(problem: &StandardizedProblem, subset: &[usize]) -> f64 {
    rss_unchecked(problem, &refit(problem, subset, subset.len()))
}

fn pick(a: (f64, Vec<usize>), b: (f64, Vec<usize>)) -> (f64, Vec<usize>) {
    if a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1) {
        a
    } else {
        b
    }
}
