use std::path::PathBuf;

use subscreen::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Inputs that parse but do not fit together.
    #[error("{0}")]
    Mismatch(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2: malformed input or schema violation; 3: dimension mismatch;
    /// 4: enumeration cap exceeded; 1: anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Parse { .. }
                | CoreError::InvalidArgument { .. }
                | CoreError::NonFinite { .. } => 2,
                CoreError::DimensionMismatch(_) => 3,
                CoreError::EnumerationCap { .. } => 4,
                CoreError::RankBudget { .. } | CoreError::Io { .. } | CoreError::Pool(_) => 1,
            },
            CliError::Json { source, .. } if source.is_io() => 1,
            CliError::Json { .. } | CliError::Usage(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
