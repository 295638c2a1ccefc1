use crate::error::Result;
use crate::numerics::{min_norm_least_squares, norm_sq, StandardizedProblem};
use crate::subset::threshold::hard_threshold;
use crate::subset::{check_len, SparseCoef};

/// `f(b) = ||y - X b||^2`, evaluated on the active columns only.
pub fn rss(problem: &StandardizedProblem, coef: &SparseCoef) -> Result<f64> {
    check_len(problem.p(), coef)?;
    Ok(rss_unchecked(problem, coef))
}

pub(crate) fn rss_unchecked(problem: &StandardizedProblem, coef: &SparseCoef) -> f64 {
    norm_sq(&residual(problem, coef))
}

fn residual(problem: &StandardizedProblem, coef: &SparseCoef) -> Vec<f64> {
    let fitted = problem.x().mul_sparse(coef.beta(), coef.active());
    problem
        .y()
        .iter()
        .zip(&fitted)
        .map(|(y, f)| y - f)
        .collect()
}

/// The vector handed to `S_M`: `c^{-1} X'y + (I - c^{-1} X'X) b`, computed
/// as `b + X'(y - X b) / c`. Degenerate columns are pinned to zero.
fn orthogonalized_point(problem: &StandardizedProblem, coef: &SparseCoef) -> Vec<f64> {
    let r = residual(problem, coef);
    let g = problem.x().tr_mul_vec(&r);
    let inv_c = 1.0 / problem.c();
    coef.beta()
        .iter()
        .zip(&g)
        .zip(problem.degenerate())
        .map(|((b, g), &deg)| if deg { 0.0 } else { b + g * inv_c })
        .collect()
}

/// One OSS update `T_M(b)`.
pub fn oss_step(problem: &StandardizedProblem, coef: &SparseCoef) -> Result<SparseCoef> {
    check_len(problem.p(), coef)?;
    Ok(oss_step_unchecked(problem, coef))
}

pub(crate) fn oss_step_unchecked(problem: &StandardizedProblem, coef: &SparseCoef) -> SparseCoef {
    let z = orthogonalized_point(problem, coef);
    SparseCoef::from_dense(hard_threshold(&z, coef.bound()), coef.bound())
}

/// One FOSS update `T_M^F(b)`: the OSS step picks the support, then the
/// coefficients are replaced by the least squares fit on that support.
pub fn foss_step(problem: &StandardizedProblem, coef: &SparseCoef) -> Result<SparseCoef> {
    check_len(problem.p(), coef)?;
    Ok(foss_step_with_set(problem, coef).0)
}

/// FOSS step that also returns the support chosen by the thresholding.
pub(crate) fn foss_step_with_set(
    problem: &StandardizedProblem,
    coef: &SparseCoef,
) -> (SparseCoef, Vec<usize>) {
    let phi = oss_step_unchecked(problem, coef);
    let set = phi.active().to_vec();
    (refit(problem, &set, coef.bound()), set)
}

/// Minimum-norm least squares fit restricted to `support`, zero elsewhere.
pub fn refit(problem: &StandardizedProblem, support: &[usize], bound: usize) -> SparseCoef {
    let p = problem.p();
    if support.is_empty() {
        return SparseCoef::zeros(p, bound);
    }
    let sub = problem.x().select_columns(support);
    let values = min_norm_least_squares(&sub, problem.y())
        .expect("response length matches the standardized design");
    SparseCoef::from_support(p, support, &values, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{standardize, Matrix};

    fn orthogonal_problem() -> StandardizedProblem {
        // Columns of a 4x4 Hadamard matrix without the constant column.
        let x = Matrix::from_rows(&[
            vec![1.0, 1.0, 1.0],
            vec![-1.0, 1.0, -1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ])
        .unwrap();
        standardize(&x, &[3.0, -1.0, 0.5, 2.0]).unwrap()
    }

    #[test]
    fn rss_of_zero_is_total_sum_of_squares() {
        let prob = orthogonal_problem();
        let z = SparseCoef::zeros(3, 2);
        assert_eq!(rss(&prob, &z).unwrap(), prob.total_sum_of_squares());
    }

    #[test]
    fn rss_of_exact_fit_is_zero() {
        let x = Matrix::from_fn(5, 3, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let prob0 = standardize(&x, &[0.0; 5]).unwrap();
        let y = prob0.x().column(0);
        let prob = standardize(&x, &y).unwrap();
        let e1 = SparseCoef::from_dense(vec![1.0, 0.0, 0.0], 1);
        assert!(rss(&prob, &e1).unwrap() < 1e-24);
    }

    #[test]
    fn orthogonal_design_one_step_is_closed_form() {
        let prob = orthogonal_problem();
        let n = prob.n() as f64;
        let prob = prob.with_spectral_constant(n).unwrap();
        let step = oss_step(&prob, &SparseCoef::zeros(3, 2)).unwrap();
        let expected: Vec<f64> = hard_threshold(prob.xty(), 2)
            .iter()
            .map(|v| v / n)
            .collect();
        assert_eq!(step.beta(), expected.as_slice());
        // FOSS refit on an orthogonal design reproduces the same coefficients.
        let f = foss_step(&prob, &SparseCoef::zeros(3, 2)).unwrap();
        assert_eq!(f.active(), step.active());
        for (a, b) in f.beta().iter().zip(step.beta()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_response_stays_at_zero() {
        let x = Matrix::from_fn(6, 4, |i, j| ((i + 2 * j) % 3) as f64 + (i * j) as f64 * 0.1);
        let prob = standardize(&x, &[0.0; 6]).unwrap();
        let z = SparseCoef::zeros(4, 2);
        assert_eq!(oss_step(&prob, &z).unwrap(), z);
        assert_eq!(foss_step(&prob, &z).unwrap(), z);
    }

    #[test]
    fn degenerate_columns_are_never_selected() {
        let x = Matrix::from_rows(&[
            vec![1.0, 7.0, 0.3],
            vec![2.0, 7.0, -0.2],
            vec![4.0, 7.0, 0.9],
            vec![3.0, 7.0, 0.1],
        ])
        .unwrap();
        let prob = standardize(&x, &[1.0, 2.0, 5.0, 3.0]).unwrap();
        let s = oss_step(&prob, &SparseCoef::zeros(3, 3)).unwrap();
        assert!(!s.active().contains(&1));
    }

    #[test]
    fn length_mismatch() {
        let prob = orthogonal_problem();
        assert!(rss(&prob, &SparseCoef::zeros(2, 1)).is_err());
        assert!(oss_step(&prob, &SparseCoef::zeros(4, 1)).is_err());
    }
}
