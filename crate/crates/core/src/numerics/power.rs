use crate::numerics::matrix::{norm_sq, Matrix};

/// Relative change between successive Rayleigh quotients that ends the
/// iteration.
pub const POWER_REL_TOL: f64 = 1e-12;
pub const POWER_MAX_ITER: usize = 100_000;

/// Outcome of the power method on `X'X`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralEstimate {
    /// Estimate of the largest eigenvalue of `X'X`.
    pub lambda: f64,
    pub iterations: usize,
    /// False when the iteration cap was hit; `lambda` is then the best
    /// estimate seen.
    pub converged: bool,
}

/// Largest eigenvalue of `X'X` by power iteration, started from the
/// normalized all-ones vector.
pub fn power_method_lambda_max(x: &Matrix) -> SpectralEstimate {
    power_method_with(x, POWER_REL_TOL, POWER_MAX_ITER)
}

pub fn power_method_with(x: &Matrix, rel_tol: f64, max_iter: usize) -> SpectralEstimate {
    let p = x.cols();
    let ones = vec![1.0 / (p as f64).sqrt(); p];

    let first = apply_gram(x, &ones);
    let mut v = if norm_sq(&first.1) > 0.0 {
        ones
    } else {
        // The all-ones start lies in the null space of X'X; fall back to a
        // fixed irregular start.
        let mut w: Vec<f64> = (0..p)
            .map(|j| 1.0 + ((j as f64 + 1.0) * 0.618_033_988_749_894_9).fract())
            .collect();
        normalize(&mut w);
        if norm_sq(&apply_gram(x, &w).1) == 0.0 {
            // Zero matrix.
            return SpectralEstimate {
                lambda: 0.0,
                iterations: 1,
                converged: true,
            };
        }
        w
    };

    let mut prev = f64::NAN;
    let mut best = 0.0_f64;
    for it in 1..=max_iter {
        let (rq, mut w) = apply_gram(x, &v);
        best = best.max(rq);
        if (rq - prev).abs() <= rel_tol * rq {
            return SpectralEstimate {
                lambda: best,
                iterations: it,
                converged: true,
            };
        }
        prev = rq;
        normalize(&mut w);
        v = w;
    }
    SpectralEstimate {
        lambda: best,
        iterations: max_iter,
        converged: false,
    }
}

/// Returns `(||X v||^2, X'X v)` for a unit vector `v`.
fn apply_gram(x: &Matrix, v: &[f64]) -> (f64, Vec<f64>) {
    let xv = x.mul_vec(v);
    (norm_sq(&xv), x.tr_mul_vec(&xv))
}

fn normalize(v: &mut [f64]) {
    let n = norm_sq(v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|t| *t /= n);
    }
}
