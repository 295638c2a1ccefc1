//! Dense linear-algebra primitives: the matrix type, standardization,
//! minimum-norm least squares and the power method for the spectral
//! constant.

mod lstsq;
mod matrix;
mod power;
mod standardize;

pub use lstsq::{
    min_norm_least_squares, solve_least_squares, LeastSquaresSolution, RANK_TOLERANCE,
};
pub use matrix::{dot, norm_sq, Matrix};
pub use power::{
    power_method_lambda_max, power_method_with, SpectralEstimate, POWER_MAX_ITER, POWER_REL_TOL,
};
pub use standardize::{spectral_constant, standardize, StandardizedProblem, SPECTRAL_INFLATION};
