//! Best-subset screening for sparse linear regression by iterative hard
//! thresholding.
//!
//! The central pieces are [`subset::oss_step`] and [`subset::foss_step`],
//! the two thresholding maps, and [`subset::run`], which iterates one of them
//! from a starting point until the residual sum of squares stops improving.
//! [`initializers`] provides SIS, ISIS and forward stepwise starting points,
//! [`subset::exhaustive_best_subset`] the exact answer for small problems, and
//! [`experiments`] a seeded Monte Carlo harness.
//!
//! ```
//! use subscreen::numerics::{standardize, Matrix};
//! use subscreen::subset::{run, IterationOptions, SparseCoef};
//!
//! let x = Matrix::from_fn(20, 6, |i, j| ((i * 7 + j * 3) % 11) as f64);
//! let y: Vec<f64> = (0..20).map(|i| 2.0 * x.get(i, 1) - x.get(i, 4)).collect();
//! let problem = standardize(&x, &y).unwrap();
//! let start = SparseCoef::zeros(problem.p(), 2);
//! let fit = run(&problem, &start, 2, &IterationOptions::foss()).unwrap();
//! assert_eq!(fit.active(), &[1, 4]);
//! assert!(fit.rss < 1e-12);
//! ```

pub mod csvio;
pub mod error;
pub mod experiments;
pub mod initializers;
pub mod numerics;
pub mod simgen;
pub mod subset;

pub use error::{Error, Result};
