use crate::error::{Error, Result};
use crate::numerics::{dot, norm_sq, StandardizedProblem};
use crate::subset::{refit, rss, SparseCoef};

/// A candidate whose residualized squared norm falls below this fraction of
/// its original squared norm is treated as lying in the span of the
/// selected columns.
const COLLINEAR_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct FsStep {
    pub added: usize,
    /// Selected columns in order of entry.
    pub active: Vec<usize>,
    /// Least squares fit on `active`.
    pub coef: SparseCoef,
    pub rss: f64,
}

/// The nested sequence of forward-stepwise submodels.
#[derive(Clone, Debug, PartialEq)]
pub struct FsPath {
    steps: Vec<FsStep>,
    max_size: usize,
    truncated: bool,
}

impl FsPath {
    pub fn steps(&self) -> &[FsStep] {
        &self.steps
    }

    /// Number of submodels on the path.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Requested maximum size.
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// True when the path stopped before `max_size` because every remaining
    /// column was collinear with the selected ones.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Least squares estimator of the size-`size` submodel.
    pub fn estimator(&self, size: usize) -> Option<&SparseCoef> {
        size.checked_sub(1)
            .and_then(|k| self.steps.get(k))
            .map(|s| &s.coef)
    }
}

/// Forward stepwise selection: at every step add the column giving the
/// largest exact RSS reduction, which for a residualized candidate `z_j` is
/// `(z_j'r)^2 / ||z_j||^2`. Candidates are kept orthogonalized against the
/// selected set (modified Gram-Schmidt), so a step costs `O(np)`. Ties go to
/// the smaller index.
pub fn forward_stepwise(problem: &StandardizedProblem, max_size: usize) -> Result<FsPath> {
    let n = problem.n();
    let p = problem.p();
    let budget = (n - 1).min(p);
    if max_size == 0 || max_size > budget {
        return Err(Error::invalid(
            "max_size",
            format!("must be in 1..={budget}, got {max_size}"),
        ));
    }

    let x = problem.x();
    let mut cols: Vec<Vec<f64>> = (0..p).map(|j| x.column(j)).collect();
    let orig: Vec<f64> = cols.iter().map(|c| norm_sq(c)).collect();
    let mut norms = orig.clone();
    let mut chosen = vec![false; p];
    let mut residual = problem.y().to_vec();
    let mut order = Vec::with_capacity(max_size);
    let mut steps = Vec::with_capacity(max_size);
    let mut truncated = false;

    for _ in 0..max_size {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..p {
            if chosen[j] || problem.is_degenerate(j) || norms[j] <= COLLINEAR_TOL * orig[j] {
                continue;
            }
            let s = dot(&cols[j], &residual);
            let score = s * s / norms[j];
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((j, score));
            }
        }
        let Some((j, _)) = best else {
            truncated = true;
            break;
        };

        chosen[j] = true;
        let inv = 1.0 / norms[j].sqrt();
        let q: Vec<f64> = cols[j].iter().map(|v| v * inv).collect();
        let a = dot(&q, &residual);
        residual.iter_mut().zip(&q).for_each(|(r, qi)| *r -= a * qi);
        for k in 0..p {
            if chosen[k] || problem.is_degenerate(k) {
                continue;
            }
            let col = &mut cols[k];
            let a = dot(&q, col);
            col.iter_mut().zip(&q).for_each(|(c, qi)| *c -= a * qi);
            norms[k] = norm_sq(col);
        }

        order.push(j);
        let mut support = order.clone();
        support.sort_unstable();
        let coef = refit(problem, &support, order.len());
        let rss = rss(problem, &coef)?;
        steps.push(FsStep {
            added: j,
            active: order.clone(),
            coef,
            rss,
        });
    }

    Ok(FsPath {
        steps,
        max_size,
        truncated,
    })
}
