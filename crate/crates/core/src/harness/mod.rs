//! Repeated seeded runs over method × declared-optimum grids, written as
//! CSV traces plus a summary table.

pub mod config;
pub mod summary;
pub mod trace_io;

pub use config::{parse_config, ConfigLayer, ExperimentConfig};
pub use summary::{summarize_dir, write_summary, Summary, SUMMARY_FILE};

use crate::benchmarks::BenchmarkProblem;
use crate::bo::{run, BoConfig, BoError, MethodSpec, RunTrace};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use summary::cell_file_name;
use thiserror::Error;

pub const FAILURES_FILE: &str = "failures.log";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// One failed run and the error that ended it.
#[derive(Debug, Clone)]
pub struct RunFailure {
    pub method: MethodSpec,
    pub fstar_declared: f64,
    pub run: usize,
    pub seed: u64,
    pub error: BoError,
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub method: MethodSpec,
    pub fstar_declared: f64,
    pub path: PathBuf,
    /// Successful runs as `(run index, trace)`.
    pub traces: Vec<(usize, RunTrace)>,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub cells: Vec<CellResult>,
    pub failures: Vec<RunFailure>,
    pub summary: Summary,
}

impl ExperimentOutcome {
    pub fn all_succeeded(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds the per-run configuration for one grid cell.
pub fn run_config(
    exp: &ExperimentConfig,
    problem: &BenchmarkProblem,
    method: MethodSpec,
    fstar_declared: f64,
    run_index: usize,
) -> BoConfig {
    let mut c = BoConfig::new(problem.domain.clone(), fstar_declared, method);
    c.f_star_true = Some(problem.f_true_star);
    c.max_iters = exp.iters;
    if let Some(n) = exp.n_init {
        c.n_init = n;
    }
    c.seed = exp.seed.wrapping_add(run_index as u64);
    c.delta = exp.delta;
    c.m0_mode = exp.m0_mode;
    c
}

/// Runs `reps` seeded runs for each (method, declared f*) cell, writes one
/// trace file per cell and the summary. Output content depends only on the
/// configuration, not on thread scheduling.
pub fn run_experiment(exp: &ExperimentConfig) -> Result<ExperimentOutcome, HarnessError> {
    run_experiment_on(exp, &exp.benchmark()?)
}

/// [`run_experiment`] with an explicit problem in place of the registry
/// lookup; `exp.problem` is still used for file names.
pub fn run_experiment_on(
    exp: &ExperimentConfig,
    problem: &BenchmarkProblem,
) -> Result<ExperimentOutcome, HarnessError> {
    std::fs::create_dir_all(&exp.output_dir).map_err(|e| HarnessError::io(&exp.output_dir, e))?;

    let cells: Vec<(MethodSpec, f64)> = exp
        .methods
        .iter()
        .flat_map(|&m| exp.fstar_declared.iter().map(move |&f| (m, f)))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..exp.reps).map(move |r| (c, r)))
        .collect();
    let configs = jobs
        .iter()
        .map(|&(c, r)| run_config(exp, problem, cells[c].0, cells[c].1, r))
        .collect::<Vec<_>>();
    let results: Vec<Result<RunTrace, BoError>> =
        configs.par_iter().map(|cfg| run(cfg, problem)).collect();

    let mut out: Vec<CellResult> = cells
        .iter()
        .map(|&(method, f)| CellResult {
            method,
            fstar_declared: f,
            path: exp
                .output_dir
                .join(cell_file_name(&exp.problem, &method.to_string(), f)),
            traces: Vec::new(),
        })
        .collect();
    let mut failures = Vec::new();
    for ((&(c, r), cfg), res) in jobs.iter().zip(&configs).zip(results) {
        match res {
            Ok(trace) => out[c].traces.push((r, trace)),
            Err(error) => failures.push(RunFailure {
                method: cells[c].0,
                fstar_declared: cells[c].1,
                run: r,
                seed: cfg.seed,
                error,
            }),
        }
    }

    for cell in &out {
        let refs: Vec<(usize, &RunTrace)> = cell.traces.iter().map(|(r, t)| (*r, t)).collect();
        trace_io::write_trace_file(&cell.path, problem.dim(), &refs)?;
    }
    let failures_path = exp.output_dir.join(FAILURES_FILE);
    if failures.is_empty() {
        if failures_path.exists() {
            std::fs::remove_file(&failures_path)
                .map_err(|e| HarnessError::io(&failures_path, e))?;
        }
    } else {
        let lines: Vec<String> = failures
            .iter()
            .map(|f| {
                format!(
                    "method={} fstar_declared={} run={} seed={}: {}",
                    f.method, f.fstar_declared, f.run, f.seed, f.error
                )
            })
            .collect();
        trace_io::write_lines(&failures_path, &lines)?;
    }

    let summary = summarize_dir(&exp.output_dir)?;
    write_summary(&exp.output_dir.join(SUMMARY_FILE), &summary)?;
    Ok(ExperimentOutcome {
        cells: out,
        failures,
        summary,
    })
}
