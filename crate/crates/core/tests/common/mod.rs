#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use subscreen::numerics::{standardize, Matrix, StandardizedProblem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Matrix {
    Matrix::from_fn(n, p, |_, _| rng.sample(StandardNormal))
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Standardized Gaussian problem with a sparse signal on `support`.
pub fn sparse_problem(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: usize,
    support: &[usize],
    value: f64,
    sigma: f64,
) -> StandardizedProblem {
    let x = gaussian_matrix(rng, n, p);
    let y: Vec<f64> = (0..n)
        .map(|i| {
            let signal: f64 = support.iter().map(|&j| value * x.get(i, j)).sum();
            signal + sigma * rng.sample::<f64, _>(StandardNormal)
        })
        .collect();
    standardize(&x, &y).unwrap()
}

/// Straightforward `||y - X b||^2` over all columns.
pub fn naive_rss(x: &Matrix, y: &[f64], beta: &[f64]) -> f64 {
    (0..x.rows())
        .map(|i| {
            let fit: f64 = (0..x.cols()).map(|j| x.get(i, j) * beta[j]).sum();
            (y[i] - fit).powi(2)
        })
        .sum()
}

/// Naive `X'v`.
pub fn naive_xtv(x: &Matrix, v: &[f64]) -> Vec<f64> {
    (0..x.cols())
        .map(|j| (0..x.rows()).map(|i| x.get(i, j) * v[i]).sum())
        .collect()
}

/// Columns of a Sylvester Hadamard matrix of order `n` other than the
/// constant one, taken in order: orthogonal, mean zero, `sum x^2 = n`.
pub fn hadamard_columns(n: usize, p: usize) -> Matrix {
    assert!(n.is_power_of_two() && p < n);
    Matrix::from_fn(n, p, |i, j| {
        if (i & (j + 1)).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    })
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}
