//! Best subset regression by iterative hard thresholding.
//!
//! The objective is `f(b) = ||y - X b||^2` subject to `||b||_0 <= M`. The
//! orthogonalizing step embeds `X` in an orthogonal design by imputing the
//! missing rows `Delta b` with `Delta'Delta = cI - X'X`, which turns each
//! update into a closed-form hard threshold:
//!
//! ```text
//! T_M(b)   = S_M(b + X'(y - X b) / c)
//! T_M^F(b) = least squares refit on the support of T_M(b)
//! ```
//!
//! With `c >= lambda_max(X'X)` both maps never increase `f` on feasible
//! points, and `f(T_M^F(b)) <= f(T_M(b))`.

mod driver;
mod exhaustive;
mod multistart;
mod step;
mod threshold;

pub use driver::run;
pub use exhaustive::{
    all_subset_rss, exhaustive_best_subset, exhaustive_best_subset_with_cap, subset_count,
    DEFAULT_ENUMERATION_CAP,
};
pub use multistart::{multi_start_foss_fs, start_window};
pub use step::{foss_step, oss_step, refit, rss};
pub use threshold::{hard_threshold, ranked_indices};

use crate::error::{Error, Result};

/// Default iteration caps for the two drivers.
pub const OSS_MAX_ITER: usize = 10_000;
pub const FOSS_MAX_ITER: usize = 500;
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Dense coefficient vector together with its support and the sparsity
/// bound `M` it is meant to respect.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseCoef {
    beta: Vec<f64>,
    active: Vec<usize>,
    bound: usize,
}

impl SparseCoef {
    pub fn zeros(p: usize, bound: usize) -> Self {
        SparseCoef {
            beta: vec![0.0; p],
            active: Vec::new(),
            bound,
        }
    }

    /// Wraps a dense vector; the active set is its nonzero pattern. The
    /// vector may have more than `bound` nonzeros (e.g. an initial point).
    pub fn from_dense(beta: Vec<f64>, bound: usize) -> Self {
        let active = beta
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(j, _)| j)
            .collect();
        SparseCoef {
            beta,
            active,
            bound,
        }
    }

    pub fn from_support(p: usize, support: &[usize], values: &[f64], bound: usize) -> Self {
        assert_eq!(support.len(), values.len());
        let mut beta = vec![0.0; p];
        for (&j, &v) in support.iter().zip(values) {
            beta[j] = v;
        }
        SparseCoef::from_dense(beta, bound)
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Indices of the nonzero coefficients, ascending.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.active.len()
    }

    /// Whether `||beta||_0 <= M`.
    pub fn is_feasible(&self) -> bool {
        self.active.len() <= self.bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Oss,
    Foss,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationOptions {
    pub max_iter: usize,
    /// Stop once the relative RSS decrease between two iterations drops
    /// below this value.
    pub rel_tol: f64,
    pub algorithm: Algorithm,
}

impl IterationOptions {
    pub fn oss() -> Self {
        IterationOptions {
            max_iter: OSS_MAX_ITER,
            rel_tol: DEFAULT_REL_TOL,
            algorithm: Algorithm::Oss,
        }
    }

    pub fn foss() -> Self {
        IterationOptions {
            max_iter: FOSS_MAX_ITER,
            rel_tol: DEFAULT_REL_TOL,
            algorithm: Algorithm::Foss,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::invalid("max_iter", "must be at least 1"));
        }
        if !(self.rel_tol >= 0.0) {
            return Err(Error::invalid(
                "rel_tol",
                format!("must be non-negative, got {}", self.rel_tol),
            ));
        }
        Ok(())
    }
}

impl Default for IterationOptions {
    fn default() -> Self {
        IterationOptions::foss()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    Converged,
    MaxIter,
    /// FOSS revisited an earlier active set.
    Cycle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScreeningResult {
    pub coef: SparseCoef,
    /// Objective value of `coef`.
    pub rss: f64,
    /// Objective after each iteration; starts with `f(init)` when the initial
    /// point is feasible.
    pub rss_trace: Vec<f64>,
    pub iterations: usize,
    pub termination: Termination,
}

impl ScreeningResult {
    pub fn active(&self) -> &[usize] {
        self.coef.active()
    }
}

pub(crate) fn check_len(problem_p: usize, coef: &SparseCoef) -> Result<()> {
    if coef.len() != problem_p {
        return Err(Error::DimensionMismatch(format!(
            "coefficient vector has length {} but the problem has {} columns",
            coef.len(),
            problem_p
        )));
    }
    Ok(())
}
