use std::path::PathBuf;

use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite value at {context}")]
    NonFinite { context: String },

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    /// The number of subsets to enumerate is above the configured cap.
    #[error("C({p}, {m}) = {count} subsets exceeds the enumeration cap of {cap}")]
    EnumerationCap {
        p: usize,
        m: usize,
        count: BigUint,
        cap: u64,
    },

    /// A solver could not produce a model of the requested size.
    #[error("rank budget exhausted: requested {requested} variables, only {available} are linearly independent")]
    RankBudget { requested: usize, available: usize },

    #[error("{path}: line {line}: {reason}")]
    Parse {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("worker pool: {0}")]
    Pool(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}
