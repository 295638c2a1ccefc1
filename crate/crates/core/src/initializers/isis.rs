use crate::error::{Error, Result};
use crate::numerics::StandardizedProblem;
use crate::subset::{ranked_indices, refit, SparseCoef};

#[derive(Clone, Debug, PartialEq)]
pub struct IsisFit {
    pub coef: SparseCoef,
    /// Selected columns, ascending.
    pub selected: Vec<usize>,
    pub rounds: usize,
    pub batch: usize,
}

/// `max(1, ceil(M / 5))`.
pub fn default_isis_batch(m: usize) -> usize {
    m.div_ceil(5).max(1)
}

/// Iterative SIS: rank the unselected columns by `|X'r|` against the current
/// residual, admit the top `batch` of them (fewer on the last round), refit
/// on everything selected so far, and repeat until `m` columns are in.
pub fn isis(problem: &StandardizedProblem, m: usize, batch: usize) -> Result<IsisFit> {
    let p = problem.p();
    if m == 0 || m > p {
        return Err(Error::invalid("M", format!("must be in 1..={p}, got {m}")));
    }
    if batch == 0 || batch > m {
        return Err(Error::invalid(
            "batch",
            format!("must be in 1..={m}, got {batch}"),
        ));
    }

    let mut excluded = problem.degenerate().to_vec();
    let mut selected: Vec<usize> = Vec::with_capacity(m);
    let mut residual = problem.y().to_vec();
    let mut coef = SparseCoef::zeros(p, m);
    let mut rounds = 0;

    while selected.len() < m {
        let scores = problem.x().tr_mul_vec(&residual);
        let take = batch.min(m - selected.len());
        let admitted = ranked_indices(&scores, take, Some(&excluded));
        if admitted.is_empty() {
            break;
        }
        for &j in &admitted {
            excluded[j] = true;
        }
        selected.extend(admitted);
        selected.sort_unstable();
        rounds += 1;

        coef = refit(problem, &selected, m);
        let fitted = problem.x().mul_sparse(coef.beta(), coef.active());
        residual = problem
            .y()
            .iter()
            .zip(&fitted)
            .map(|(y, f)| y - f)
            .collect();
    }

    Ok(IsisFit {
        coef,
        selected,
        rounds,
        batch,
    })
}
