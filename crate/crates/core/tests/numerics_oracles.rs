mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use subscreen::numerics::{
    min_norm_least_squares, power_method_lambda_max, solve_least_squares, standardize, Matrix,
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues(a: &Matrix) -> Vec<f64> {
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (m[k][p], m[k][q]);
                    m[k][p] = c * akp - s * akq;
                    m[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * apk - s * aqk;
                    m[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).collect()
}

fn to_nalgebra(a: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

/// Minimum-norm least squares solution of `(U V) b = y` for full-rank
/// factors `U` (n x r) and `V` (r x p), from the closed form
/// `(UV)^+ = V' (V V')^-1 (U'U)^-1 U'`.
fn factored_pinv_solution(u: &Matrix, v: &Matrix, y: &[f64]) -> Vec<f64> {
    let nu = to_nalgebra(u);
    let nv = to_nalgebra(v);
    let utu = (nu.transpose() * &nu).try_inverse().unwrap();
    let vvt = (&nv * nv.transpose()).try_inverse().unwrap();
    let yv = nalgebra::DVector::from_column_slice(y);
    let b = nv.transpose() * vvt * utu * nu.transpose() * yv;
    b.iter().copied().collect()
}

/// A rank-`rank` matrix as a product of Gaussian factors.
fn low_rank(
    rng: &mut rand_chacha::ChaCha8Rng,
    n: usize,
    p: usize,
    rank: usize,
) -> (Matrix, Matrix, Matrix) {
    let u = gaussian_matrix(rng, n, rank);
    let v = gaussian_matrix(rng, rank, p);
    (u.matmul(&v).unwrap(), u, v)
}

#[test]
fn power_method_matches_jacobi() {
    let mut rng = rng(11);
    for case in 0..40 {
        let n = 5 + case % 17;
        let p = 2 + (case * 7) % 23;
        let x = gaussian_matrix(&mut rng, n, p);
        let eig = jacobi_eigenvalues(&x.gram());
        let oracle = eig.iter().copied().fold(f64::MIN, f64::max);
        let est = power_method_lambda_max(&x);
        assert!(
            rel_close(est.lambda, oracle, 1e-8),
            "case {case}: power {} jacobi {oracle}",
            est.lambda
        );
    }
}

#[test]
fn spectral_constant_dominates_gram() {
    // c I - X'X must be positive semidefinite, so every eigenvalue of X'X
    // and every Rayleigh quotient stays below c.
    let mut rng = rng(12);
    for case in 0..30 {
        let x = gaussian_matrix(&mut rng, 10 + case, 4 + (case * 3) % 20);
        let y = gaussian_vec(&mut rng, x.rows());
        let prob = standardize(&x, &y).unwrap();
        let eig = jacobi_eigenvalues(&prob.x().gram());
        for e in eig {
            assert!(e <= prob.c(), "eigenvalue {e} above c = {}", prob.c());
        }
        for _ in 0..100 {
            let v = gaussian_vec(&mut rng, prob.p());
            let xv = prob.x().mul_vec(&v);
            let rq = xv.iter().map(|t| t * t).sum::<f64>() / v.iter().map(|t| t * t).sum::<f64>();
            assert!(rq <= prob.c());
        }
    }
}

#[test]
fn least_squares_matches_pseudo_inverse() {
    let mut rng = rng(13);
    for case in 0..200 {
        let n = 3 + case % 12;
        let p = 1 + (case * 5) % 14;
        let rank = 1 + case % n.min(p);
        let (a, u, v) = low_rank(&mut rng, n, p, rank);
        let y = gaussian_vec(&mut rng, n);
        let sol = solve_least_squares(&a, &y).unwrap();
        assert_eq!(sol.rank, rank, "case {case} ({n}x{p})");
        let oracle = factored_pinv_solution(&u, &v, &y);
        for (b, o) in sol.coef.iter().zip(&oracle) {
            assert!(
                (b - o).abs() <= 1e-7 * (1.0 + o.abs()),
                "case {case}: {b} vs {o}"
            );
        }
    }
}

#[test]
fn least_squares_residual_is_orthogonal() {
    let mut rng = rng(14);
    for case in 0..200 {
        let n = 4 + case % 20;
        let p = 1 + (case * 3) % 25;
        let rank = 1 + (case * 7) % n.min(p);
        let (a, _, _) = low_rank(&mut rng, n, p, rank);
        let y = gaussian_vec(&mut rng, n);
        let b = min_norm_least_squares(&a, &y).unwrap();
        let fit = a.mul_vec(&b);
        let r: Vec<f64> = y.iter().zip(&fit).map(|(y, f)| y - f).collect();
        let g = naive_xtv(&a, &r);
        let scale = a.as_slice().iter().fold(0.0f64, |m, v| m.max(v.abs()))
            * y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for gj in g {
            assert!(gj.abs() <= 1e-9 * scale * n as f64, "case {case}: {gj}");
        }
    }
}

#[test]
fn standardized_columns_have_fixed_moments() {
    let mut rng = rng(15);
    let x = Matrix::from_fn(30, 8, |i, j| 5.0 + (j as f64) * ((i * (j + 3)) % 7) as f64);
    let y = gaussian_vec(&mut rng, 30);
    let prob = standardize(&x, &y).unwrap();
    for j in 0..8 {
        let col = prob.x().column(j);
        let s: f64 = col.iter().sum();
        let ss: f64 = col.iter().map(|v| v * v).sum();
        if prob.is_degenerate(j) {
            continue;
        }
        assert!(s.abs() < 1e-10);
        assert!((ss - 30.0).abs() < 1e-10);
    }
    // Column 0 is constant.
    assert!(prob.is_degenerate(0));
    assert!(prob.y().iter().sum::<f64>().abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn standardize_is_idempotent(seed in any::<u64>(), n in 3usize..30, p in 1usize..10) {
        let mut rng = rng(seed);
        let x = gaussian_matrix(&mut rng, n, p);
        let y = gaussian_vec(&mut rng, n);
        let once = standardize(&x, &y).unwrap();
        let twice = standardize(once.x(), once.y()).unwrap();
        for (a, b) in once.x().as_slice().iter().zip(twice.x().as_slice()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in once.y().iter().zip(twice.y()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rayleigh_quotients_below_estimate(seed in any::<u64>(), n in 2usize..25, p in 1usize..25) {
        let mut rng = rng(seed);
        let x = gaussian_matrix(&mut rng, n, p);
        let est = power_method_lambda_max(&x);
        for _ in 0..20 {
            let v = gaussian_vec(&mut rng, p);
            let xv = x.mul_vec(&v);
            let rq = xv.iter().map(|t| t * t).sum::<f64>() / v.iter().map(|t| t * t).sum::<f64>();
            prop_assert!(rq <= est.lambda * (1.0 + 1e-9));
        }
    }

    #[test]
    fn min_norm_solution_is_orthogonal_to_null_space(seed in any::<u64>()) {
        // Duplicate columns: the minimum-norm solution splits weight equally.
        let mut rng = rng(seed);
        let base = gaussian_matrix(&mut rng, 8, 3);
        let a = Matrix::from_fn(8, 4, |i, j| base.get(i, if j == 3 { 0 } else { j }));
        let y = gaussian_vec(&mut rng, 8);
        let b = min_norm_least_squares(&a, &y).unwrap();
        prop_assert!((b[0] - b[3]).abs() < 1e-9 * (1.0 + b[0].abs()));
    }
}
