use crate::error::{Error, Result};
use crate::numerics::StandardizedProblem;
use crate::subset::{ranked_indices, refit, SparseCoef};

/// Sure independence screening: keep the `m` columns with the largest
/// marginal correlation `|X'y|` and refit them by least squares.
pub fn sis(problem: &StandardizedProblem, m: usize) -> Result<SparseCoef> {
    let p = problem.p();
    if m == 0 || m > p {
        return Err(Error::invalid("M", format!("must be in 1..={p}, got {m}")));
    }
    let mut selected = ranked_indices(problem.xty(), m, Some(problem.degenerate()));
    selected.sort_unstable();
    Ok(refit(problem, &selected, m))
}
