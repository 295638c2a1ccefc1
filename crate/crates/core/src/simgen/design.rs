use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// Linear model with `d` equal nonzero coefficients on the first `d`
/// columns and an equicorrelated Gaussian design.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerativeModel {
    pub n: usize,
    pub p: usize,
    pub d: usize,
    pub rho: f64,
    pub sigma: f64,
    pub beta_value: f64,
    pub seed: u64,
}

impl GenerativeModel {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid("n", "must be at least 2"));
        }
        if self.p == 0 {
            return Err(Error::invalid("p", "must be at least 1"));
        }
        if self.d > self.p {
            return Err(Error::invalid(
                "d",
                format!("must not exceed p = {}", self.p),
            ));
        }
        check_rho(self.rho)?;
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::invalid("sigma", "must be positive and finite"));
        }
        if !self.beta_value.is_finite() {
            return Err(Error::invalid("beta_value", "must be finite"));
        }
        Ok(())
    }

    pub fn true_model(&self) -> TrueModel {
        TrueModel::leading(self.p, self.d, self.beta_value, self.sigma)
    }
}

/// The data-generating coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TrueModel {
    /// Nonzero positions of `beta`, ascending.
    pub support: Vec<usize>,
    pub beta: Vec<f64>,
    pub sigma: f64,
}

impl TrueModel {
    /// `beta_j = value` for `j < d`, zero elsewhere.
    pub fn leading(p: usize, d: usize, value: f64, sigma: f64) -> Self {
        let mut beta = vec![0.0; p];
        beta[..d].iter_mut().for_each(|b| *b = value);
        let support = if value != 0.0 {
            (0..d).collect()
        } else {
            Vec::new()
        };
        TrueModel {
            support,
            beta,
            sigma,
        }
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::invalid(
            "rho",
            format!("must lie in [0, 1), got {rho}"),
        ));
    }
    Ok(())
}

/// Rows i.i.d. `N(0, S)` with unit variances and common correlation `rho`,
/// drawn through the one-factor form `x_ij = sqrt(rho) g_i + sqrt(1 - rho) e_ij`.
pub fn gen_equicorrelated_design<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    rho: f64,
    rng: &mut R,
) -> Result<Matrix> {
    check_rho(rho)?;
    if n == 0 || p == 0 {
        return Err(Error::DimensionMismatch(format!(
            "design must be non-empty, got {n}x{p}"
        )));
    }
    let a = rho.sqrt();
    let b = (1.0 - rho).sqrt();
    let mut data = Vec::with_capacity(n * p);
    for _ in 0..n {
        let g: f64 = rng.sample(StandardNormal);
        for _ in 0..p {
            let e: f64 = rng.sample(StandardNormal);
            data.push(a * g + b * e);
        }
    }
    Matrix::new(n, p, data)
}

/// `y = X beta + sigma z` with `z` i.i.d. standard normal.
pub fn gen_response<R: Rng + ?Sized>(
    x: &Matrix,
    truth: &TrueModel,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if truth.beta.len() != x.cols() {
        return Err(Error::DimensionMismatch(format!(
            "design has {} columns but the model has {} coefficients",
            x.cols(),
            truth.beta.len()
        )));
    }
    let mut y = x.mul_sparse(&truth.beta, &truth.support);
    for yi in y.iter_mut() {
        let z: f64 = rng.sample(StandardNormal);
        *yi += truth.sigma * z;
    }
    Ok(y)
}
