use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiments::config::{
    BaseMethod, DesignSpec, ExperimentConfig, Method, MethodSettings,
};
use crate::experiments::table::{aggregate, MethodTable};
use crate::initializers::{forward_stepwise, isis, sis, FsPath};
use crate::numerics::{standardize, Matrix, StandardizedProblem};
use crate::simgen::{
    child_stream, gen_equicorrelated_design, gen_response, kronecker_design, load_base_design,
    sylvester_hadamard, StreamTag, TrueModel,
};
use crate::subset::{multi_start_foss_fs, rss, run, start_window, SparseCoef, Termination};

/// Result of one method on one repetition.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodOutcome {
    pub method: Method,
    /// Selected columns, 0-based, ascending.
    pub selected: Vec<usize>,
    pub rss: f64,
    pub iterations: usize,
}

impl MethodOutcome {
    /// Whether the selected set contains every index of `support`.
    pub fn covers(&self, support: &[usize]) -> bool {
        support
            .iter()
            .all(|j| self.selected.binary_search(j).is_ok())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepetitionOutcome {
    pub rep: usize,
    pub outcomes: Vec<MethodOutcome>,
}

impl RepetitionOutcome {
    pub fn get(&self, method: Method) -> Option<&MethodOutcome> {
        self.outcomes.iter().find(|o| o.method == method)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepetitionFailure {
    pub rep: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub table: MethodTable,
    /// Successful repetitions in repetition order.
    pub records: Vec<RepetitionOutcome>,
    pub failures: Vec<RepetitionFailure>,
}

/// A validated configuration with its fixed inputs resolved (the
/// Kronecker design, when used, is loaded once).
#[derive(Clone, Debug)]
pub struct Experiment {
    config: ExperimentConfig,
    fixed_design: Option<Matrix>,
    non_binary_entries: usize,
    truth: TrueModel,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let mut non_binary_entries = 0;
        let fixed_design = match &config.design {
            DesignSpec::Equicorrelated => None,
            DesignSpec::Kronecker {
                base_design_path,
                hadamard_order,
            } => {
                let base = load_base_design(base_design_path)?;
                let h = sylvester_hadamard(*hadamard_order)?;
                let kron = kronecker_design(&h, &base)?;
                non_binary_entries = kron.non_binary_entries;
                let design = kron.matrix;
                if design.rows() != config.n {
                    return Err(Error::invalid(
                        "n",
                        format!("Kronecker design has {} rows", design.rows()),
                    ));
                }
                if design.cols() != config.p {
                    return Err(Error::invalid(
                        "p",
                        format!("Kronecker design has {} columns", design.cols()),
                    ));
                }
                Some(design)
            }
        };
        let truth = TrueModel::leading(config.p, config.d, config.beta_value, config.sigma);
        Ok(Experiment {
            config,
            fixed_design,
            non_binary_entries,
            truth,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    /// Entries of the Kronecker base design that are not `+1` or `-1`.
    pub fn non_binary_entries(&self) -> usize {
        self.non_binary_entries
    }

    pub fn true_support(&self) -> &[usize] {
        &self.truth.support
    }

    /// The standardized data of repetition `rep`.
    pub fn problem(&self, rep: usize) -> Result<StandardizedProblem> {
        let c = &self.config;
        let x = match &self.fixed_design {
            Some(x) => x.clone(),
            None => {
                let mut rng = child_stream(c.seed, rep as u64, StreamTag::Design);
                gen_equicorrelated_design(c.n, c.p, c.rho, &mut rng)?
            }
        };
        let mut rng = child_stream(c.seed, rep as u64, StreamTag::Noise);
        let y = gen_response(&x, &self.truth, &mut rng)?;
        standardize(&x, &y)
    }

    /// Generates repetition `rep` and runs every configured method on the
    /// same standardized data.
    pub fn evaluate_repetition(&self, rep: usize) -> Result<RepetitionOutcome> {
        let c = &self.config;
        let problem = self.problem(rep)?;
        let fits = fit_methods(&problem, &c.methods, c.m, &c.settings())?;
        let outcomes = fits
            .into_iter()
            .map(|f| MethodOutcome {
                method: f.method,
                selected: f.coef.active().to_vec(),
                rss: f.rss,
                iterations: f.iterations,
            })
            .collect();
        Ok(RepetitionOutcome { rep, outcomes })
    }

    /// Runs all repetitions on `workers` threads (all cores when `None`).
    /// Output does not depend on the worker count.
    pub fn run(&self, workers: Option<usize>) -> Result<ExperimentOutput> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(w) = workers {
            builder = builder.num_threads(w.max(1));
        }
        let pool = builder.build().map_err(|e| Error::Pool(e.to_string()))?;
        let results: Vec<(usize, Result<RepetitionOutcome>)> = pool.install(|| {
            (0..self.config.repetitions)
                .into_par_iter()
                .map(|rep| (rep, self.evaluate_repetition(rep)))
                .collect()
        });

        let mut records = Vec::new();
        let mut failures = Vec::new();
        for (rep, r) in results {
            match r {
                Ok(o) => records.push(o),
                Err(e) => failures.push(RepetitionFailure {
                    rep,
                    reason: e.to_string(),
                }),
            }
        }
        let table = if records.is_empty() {
            MethodTable::empty(&self.config.methods)
        } else {
            aggregate(&records, self.true_support())?
        }
        .with_exclusions(failures.len());
        Ok(ExperimentOutput {
            table,
            records,
            failures,
        })
    }
}

/// A fitted screening method.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodFit {
    pub method: Method,
    pub coef: SparseCoef,
    pub rss: f64,
    /// Rounds for ISIS, steps for FS, 0 for SIS, thresholding iterations for
    /// the refined methods.
    pub iterations: usize,
    /// Set for the refined methods.
    pub termination: Option<Termination>,
}

/// Runs `methods` on one standardized problem. Each basic screener is
/// computed once and shared by the methods that start from it: `FOSS-X` and
/// `OSS-X` iterate from the least squares fit of `X`, and `FOSS-FS` runs
/// FOSS from every forward-stepwise size in the multi-start window.
pub fn fit_methods(
    problem: &StandardizedProblem,
    methods: &[Method],
    m: usize,
    settings: &MethodSettings,
) -> Result<Vec<MethodFit>> {
    let mut starts: HashMap<BaseMethod, (SparseCoef, usize)> = HashMap::new();
    let mut fs_path: Option<FsPath> = None;
    let needs = |b: BaseMethod| methods.iter().any(|x| x.base() == b);

    if needs(BaseMethod::Sis) {
        starts.insert(BaseMethod::Sis, (sis(problem, m)?, 0));
    }
    if needs(BaseMethod::Isis) {
        let fit = isis(problem, m, settings.isis_batch(m))?;
        starts.insert(BaseMethod::Isis, (fit.coef, fit.rounds));
    }
    if needs(BaseMethod::Fs) {
        let budget = (problem.n() - 1).min(problem.p());
        let mut size = m;
        if methods.contains(&Method::FossFs) {
            size = size.max(*start_window(m, problem.n(), problem.p()).end());
        }
        let path = forward_stepwise(problem, size.min(budget))?;
        let est = path.estimator(m).ok_or(Error::RankBudget {
            requested: m,
            available: path.len(),
        })?;
        starts.insert(BaseMethod::Fs, (est.clone(), m));
        fs_path = Some(path);
    }

    let mut fits = Vec::with_capacity(methods.len());
    for &method in methods {
        let (start, base_iters) = &starts[&method.base()];
        let fit = match method.refinement() {
            None => MethodFit {
                method,
                coef: start.clone(),
                rss: rss(problem, start)?,
                iterations: *base_iters,
                termination: None,
            },
            Some(alg) => {
                let opts = settings.iteration_options(alg);
                let res = if method == Method::FossFs {
                    let path = fs_path.as_ref().expect("FS path computed");
                    multi_start_foss_fs(problem, m, path, &opts)?
                } else {
                    run(problem, start, m, &opts)?
                };
                MethodFit {
                    method,
                    coef: res.coef,
                    rss: res.rss,
                    iterations: res.iterations,
                    termination: Some(res.termination),
                }
            }
        };
        fits.push(fit);
    }
    Ok(fits)
}

/// Convenience wrapper: validate, resolve, evaluate one repetition.
pub fn evaluate_repetition(config: &ExperimentConfig, rep: usize) -> Result<RepetitionOutcome> {
    Experiment::new(config.clone())?.evaluate_repetition(rep)
}

/// Convenience wrapper around [`Experiment::run`].
pub fn run_experiment(
    config: &ExperimentConfig,
    workers: Option<usize>,
) -> Result<ExperimentOutput> {
    Experiment::new(config.clone())?.run(workers)
}
