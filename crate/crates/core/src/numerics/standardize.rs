use crate::error::{Error, Result};
use crate::numerics::matrix::{norm_sq, Matrix};
use crate::numerics::power::{power_method_lambda_max, SpectralEstimate};

/// Factor applied to the power-method estimate so that the spectral constant
/// dominates `lambda_max(X'X)` even though power iteration converges from
/// below.
pub const SPECTRAL_INFLATION: f64 = 1.0 + 1e-8;

/// Columns whose centered sum of squares falls below this fraction of
/// `n * (1 + mean^2)` are treated as constant.
const DEGENERATE_TOL: f64 = 1e-24;

/// A centered and rescaled regression problem: every column of `X` sums to
/// zero and has squared norm `n`, and `y` is centered.
///
/// This is the immutable input shared by all solvers. It also caches `X'y`,
/// the spectral constant `c >= lambda_max(X'X)`, and the transformation
/// needed to map coefficients back to the raw scale.
#[derive(Clone, Debug)]
pub struct StandardizedProblem {
    x: Matrix,
    y: Vec<f64>,
    xty: Vec<f64>,
    c: f64,
    spectral: SpectralEstimate,
    col_means: Vec<f64>,
    col_scales: Vec<f64>,
    y_mean: f64,
    degenerate: Vec<bool>,
}

/// Centers and scales `x_raw` so each column has `sum x_ij^2 = n`, and
/// centers `y_raw`.
///
/// Zero-variance columns are centered (hence become zero), keep a scale of
/// one, and are flagged degenerate; solvers never select them.
pub fn standardize(x_raw: &Matrix, y_raw: &[f64]) -> Result<StandardizedProblem> {
    let n = x_raw.rows();
    let p = x_raw.cols();
    if n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "need at least 2 observations, got {n}"
        )));
    }
    if y_raw.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "design has {n} rows but response has length {}",
            y_raw.len()
        )));
    }
    if let Some(i) = y_raw.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: format!("response entry {i}"),
        });
    }
    let nf = n as f64;

    let mut means = vec![0.0; p];
    for i in 0..n {
        for (m, &v) in means.iter_mut().zip(x_raw.row(i)) {
            *m += v;
        }
    }
    means.iter_mut().for_each(|m| *m /= nf);

    let mut ss = vec![0.0; p];
    for i in 0..n {
        for ((s, &v), &m) in ss.iter_mut().zip(x_raw.row(i)).zip(&means) {
            let d = v - m;
            *s += d * d;
        }
    }

    let mut scales = vec![1.0; p];
    let mut degenerate = vec![false; p];
    for j in 0..p {
        if ss[j] <= DEGENERATE_TOL * nf * (1.0 + means[j] * means[j]) {
            degenerate[j] = true;
        } else {
            scales[j] = (ss[j] / nf).sqrt();
        }
    }

    let mut x = x_raw.clone();
    {
        let data = x.as_mut_slice();
        for i in 0..n {
            let row = &mut data[i * p..(i + 1) * p];
            for j in 0..p {
                row[j] = if degenerate[j] {
                    0.0
                } else {
                    (row[j] - means[j]) / scales[j]
                };
            }
        }
    }

    let y_mean = y_raw.iter().sum::<f64>() / nf;
    let y: Vec<f64> = y_raw.iter().map(|v| v - y_mean).collect();
    Ok(StandardizedProblem::assemble(
        x, y, means, scales, y_mean, degenerate,
    ))
}

impl StandardizedProblem {
    fn assemble(
        x: Matrix,
        y: Vec<f64>,
        col_means: Vec<f64>,
        col_scales: Vec<f64>,
        y_mean: f64,
        degenerate: Vec<bool>,
    ) -> Self {
        let xty = x.tr_mul_vec(&y);
        let spectral = power_method_lambda_max(&x);
        let c = spectral_constant(spectral.lambda);
        StandardizedProblem {
            x,
            y,
            xty,
            c,
            spectral,
            col_means,
            col_scales,
            y_mean,
            degenerate,
        }
    }

    /// Replaces the spectral constant. Monotonicity of the iterations needs
    /// `c >= lambda_max(X'X)`; this is the caller's responsibility.
    pub fn with_spectral_constant(mut self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid("c", format!("must be positive, got {c}")));
        }
        self.c = c;
        Ok(self)
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Cached `X'y`.
    pub fn xty(&self) -> &[f64] {
        &self.xty
    }

    /// Spectral constant used by the thresholding iterations.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn spectral_estimate(&self) -> SpectralEstimate {
        self.spectral
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn p(&self) -> usize {
        self.x.cols()
    }

    pub fn col_means(&self) -> &[f64] {
        &self.col_means
    }

    pub fn col_scales(&self) -> &[f64] {
        &self.col_scales
    }

    pub fn y_mean(&self) -> f64 {
        self.y_mean
    }

    pub fn is_degenerate(&self, j: usize) -> bool {
        self.degenerate[j]
    }

    pub fn degenerate(&self) -> &[bool] {
        &self.degenerate
    }

    /// Squared norm of the centered response, `f(0)`.
    pub fn total_sum_of_squares(&self) -> f64 {
        norm_sq(&self.y)
    }

    /// Maps standardized coefficients to the raw data scale, returning
    /// `(intercept, slopes)`.
    pub fn to_original_scale(&self, beta: &[f64]) -> (f64, Vec<f64>) {
        let slopes: Vec<f64> = beta
            .iter()
            .zip(&self.col_scales)
            .map(|(b, s)| b / s)
            .collect();
        let shift: f64 = slopes
            .iter()
            .zip(&self.col_means)
            .zip(&self.degenerate)
            .filter(|(_, &d)| !d)
            .map(|((b, m), _)| b * m)
            .sum();
        (self.y_mean - shift, slopes)
    }
}

/// `c = (1 + 1e-8) * lambda_hat`.
pub fn spectral_constant(lambda_hat: f64) -> f64 {
    let c = SPECTRAL_INFLATION * lambda_hat;
    if c > 0.0 {
        c
    } else {
        // All-zero design; any positive constant keeps the iteration defined.
        1.0
    }
}
