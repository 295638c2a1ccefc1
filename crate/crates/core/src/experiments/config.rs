use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Algorithm, IterationOptions};

/// Screening method evaluated by the harness. `FOSS-X` / `OSS-X` start the
/// corresponding iteration from the least squares fit of basic method `X`;
/// `FOSS-FS` uses the multi-start scheme over forward-stepwise submodels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "SIS")]
    Sis,
    #[serde(rename = "ISIS")]
    Isis,
    #[serde(rename = "FS")]
    Fs,
    #[serde(rename = "FOSS-SIS")]
    FossSis,
    #[serde(rename = "FOSS-ISIS")]
    FossIsis,
    #[serde(rename = "FOSS-FS")]
    FossFs,
    #[serde(rename = "OSS-SIS")]
    OssSis,
    #[serde(rename = "OSS-ISIS")]
    OssIsis,
    #[serde(rename = "OSS-FS")]
    OssFs,
}

/// The three basic screeners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseMethod {
    Sis,
    Isis,
    Fs,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Sis,
        Method::Isis,
        Method::Fs,
        Method::FossSis,
        Method::FossIsis,
        Method::FossFs,
        Method::OssSis,
        Method::OssIsis,
        Method::OssFs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Sis => "SIS",
            Method::Isis => "ISIS",
            Method::Fs => "FS",
            Method::FossSis => "FOSS-SIS",
            Method::FossIsis => "FOSS-ISIS",
            Method::FossFs => "FOSS-FS",
            Method::OssSis => "OSS-SIS",
            Method::OssIsis => "OSS-ISIS",
            Method::OssFs => "OSS-FS",
        }
    }

    pub fn base(self) -> BaseMethod {
        match self {
            Method::Sis | Method::FossSis | Method::OssSis => BaseMethod::Sis,
            Method::Isis | Method::FossIsis | Method::OssIsis => BaseMethod::Isis,
            Method::Fs | Method::FossFs | Method::OssFs => BaseMethod::Fs,
        }
    }

    /// The iteration applied on top of the basic screener, if any.
    pub fn refinement(self) -> Option<Algorithm> {
        match self {
            Method::Sis | Method::Isis | Method::Fs => None,
            Method::FossSis | Method::FossIsis | Method::FossFs => Some(Algorithm::Foss),
            Method::OssSis | Method::OssIsis | Method::OssFs => Some(Algorithm::Oss),
        }
    }

    /// The basic method a refined method starts from.
    pub fn basic(self) -> Method {
        match self.base() {
            BaseMethod::Sis => Method::Sis,
            BaseMethod::Isis => Method::Isis,
            BaseMethod::Fs => Method::Fs,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::invalid("method", format!("unknown method {s:?}")))
    }
}

/// Where the design matrix of each repetition comes from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DesignSpec {
    /// Fresh Gaussian rows with unit variances and common correlation `rho`.
    #[default]
    Equicorrelated,
    /// Fixed design `H_m ⊗ D` for a two-level base design `D` read from file.
    Kronecker {
        base_design_path: PathBuf,
        hadamard_order: usize,
    },
}

/// One simulation cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: usize,
    pub d: usize,
    #[serde(default)]
    pub rho: f64,
    pub sigma: f64,
    pub beta_value: f64,
    #[serde(rename = "M")]
    pub m: usize,
    pub repetitions: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
    #[serde(default)]
    pub design: DesignSpec,
    /// ISIS round size; defaults to `max(1, ceil(M / 5))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isis_batch: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

impl ExperimentConfig {
    /// Checks the constraints serde cannot express; errors name the key.
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
        if !(0.0..1.0).contains(&self.rho) {
            return Err(Error::invalid(
                "rho",
                format!("must lie in [0, 1), got {}", self.rho),
            ));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::invalid("sigma", "must be positive and finite"));
        }
        if !self.beta_value.is_finite() {
            return Err(Error::invalid("beta_value", "must be finite"));
        }
        let budget = (self.n - 1).min(self.p);
        if self.m == 0 || self.m > budget {
            return Err(Error::invalid(
                "M",
                format!("must be in 1..={budget} (min(n - 1, p))"),
            ));
        }
        if self.repetitions == 0 {
            return Err(Error::invalid("repetitions", "must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid("methods", "must list at least one method"));
        }
        if let Some(b) = self.isis_batch {
            if b == 0 || b > self.m {
                return Err(Error::invalid(
                    "isis_batch",
                    format!("must be in 1..={}", self.m),
                ));
            }
        }
        if let Some(t) = self.rel_tol {
            if !(t >= 0.0) {
                return Err(Error::invalid("rel_tol", "must be non-negative"));
            }
        }
        if self.max_iter == Some(0) {
            return Err(Error::invalid("max_iter", "must be at least 1"));
        }
        if let DesignSpec::Kronecker { hadamard_order, .. } = &self.design {
            if *hadamard_order == 0 || !hadamard_order.is_power_of_two() {
                return Err(Error::invalid(
                    "design.hadamard_order",
                    "must be a power of two",
                ));
            }
        }
        Ok(())
    }

    pub fn isis_batch(&self) -> usize {
        self.settings().isis_batch(self.m)
    }

    pub fn iteration_options(&self, algorithm: Algorithm) -> IterationOptions {
        self.settings().iteration_options(algorithm)
    }

    pub fn settings(&self) -> MethodSettings {
        MethodSettings {
            isis_batch: self.isis_batch,
            rel_tol: self.rel_tol,
            max_iter: self.max_iter,
        }
    }
}

/// Optional overrides of the per-method defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MethodSettings {
    /// ISIS round size; defaults to `max(1, ceil(M / 5))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isis_batch: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

impl MethodSettings {
    pub fn isis_batch(&self, m: usize) -> usize {
        self.isis_batch
            .unwrap_or_else(|| crate::initializers::default_isis_batch(m))
    }

    pub fn iteration_options(&self, algorithm: Algorithm) -> IterationOptions {
        let mut opts = match algorithm {
            Algorithm::Oss => IterationOptions::oss(),
            Algorithm::Foss => IterationOptions::foss(),
        };
        if let Some(t) = self.rel_tol {
            opts.rel_tol = t;
        }
        if let Some(k) = self.max_iter {
            opts.max_iter = k;
        }
        opts
    }
}
