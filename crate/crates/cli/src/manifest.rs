use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use subscreen::experiments::ExperimentConfig;

use crate::error::{io_err, CliError, CliResult};
use crate::oracle::OracleConfig;
use crate::screen::ScreenConfig;

/// The fully resolved inputs of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "config", rename_all = "lowercase")]
pub enum Resolved {
    Screen(ScreenConfig),
    Simulate(ExperimentConfig),
    Oracle(OracleConfig),
}

impl Resolved {
    pub fn seed(&self) -> u64 {
        match self {
            Resolved::Screen(c) => c.seed,
            Resolved::Simulate(c) => c.seed,
            Resolved::Oracle(c) => c.seed,
        }
    }
}

/// Written next to every output; `subscreen replay` reruns it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub invocation: Vec<String>,
    #[serde(flatten)]
    pub resolved: Resolved,
    pub version: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
    pub outputs: Vec<PathBuf>,
}

pub fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as u64)
}

pub fn load(path: &Path) -> CliResult<RunManifest> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Where the manifest of a run writing to `out` goes: inside the output
/// directory for `simulate`, next to the result file otherwise.
pub fn path_for(resolved: &Resolved, out: &Path) -> PathBuf {
    match resolved {
        Resolved::Simulate(_) => out.join("manifest.json"),
        _ => {
            let mut s = out.as_os_str().to_owned();
            s.push(".manifest.json");
            PathBuf::from(s)
        }
    }
}
