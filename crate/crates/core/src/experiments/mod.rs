//! Monte Carlo harness: simulate repetitions, run every configured method
//! on the same standardized data, and summarize coverage rate (CR) and
//! average objective (AO) per method.

mod config;
mod harness;
mod table;

pub use config::{BaseMethod, DesignSpec, ExperimentConfig, Method, MethodSettings};
pub use harness::{
    evaluate_repetition, fit_methods, run_experiment, Experiment, ExperimentOutput, MethodFit,
    MethodOutcome, RepetitionFailure, RepetitionOutcome,
};
pub use table::{aggregate, read_records, write_records, MethodRow, MethodTable};
