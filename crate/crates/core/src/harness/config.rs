//! Experiment configuration: command-line flags layered over an optional
//! TOML file layered over built-in defaults.

use super::HarnessError;
use crate::acquisition::DEFAULT_DELTA;
use crate::benchmarks::{lookup, BenchmarkProblem};
use crate::bo::MethodSpec;
use crate::tgp::M0Mode;
use serde::Deserialize;
use std::path::PathBuf;

pub const OUTPUT_DIR_ENV: &str = "KOBO_OUT_DIR";
pub const DEFAULT_OUTPUT_DIR: &str = "results";
pub const DEFAULT_ITERS: usize = 40;
pub const DEFAULT_REPS: usize = 20;

/// Optional settings as they come from a file or from flags. Every field
/// left `None` falls through to the next layer.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub problem: Option<String>,
    pub methods: Option<Vec<String>>,
    pub iters: Option<usize>,
    pub n_init: Option<usize>,
    pub reps: Option<usize>,
    pub seed: Option<u64>,
    pub fstar_declared: Option<Vec<f64>>,
    pub delta: Option<f64>,
    pub m0_mode: Option<String>,
    pub output_dir: Option<PathBuf>,
}

impl ConfigLayer {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            problem: self.problem.or(lower.problem),
            methods: self.methods.or(lower.methods),
            iters: self.iters.or(lower.iters),
            n_init: self.n_init.or(lower.n_init),
            reps: self.reps.or(lower.reps),
            seed: self.seed.or(lower.seed),
            fstar_declared: self.fstar_declared.or(lower.fstar_declared),
            delta: self.delta.or(lower.delta),
            m0_mode: self.m0_mode.or(lower.m0_mode),
            output_dir: self.output_dir.or(lower.output_dir),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: String,
    pub methods: Vec<MethodSpec>,
    pub iters: usize,
    /// `3·d` when `None`.
    pub n_init: Option<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Defaults to the problem's true optimum.
    pub fstar_declared: Vec<f64>,
    pub delta: f64,
    pub m0_mode: M0Mode,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn benchmark(&self) -> Result<BenchmarkProblem, HarnessError> {
        lookup(&self.problem).map_err(|e| HarnessError::Usage(e.to_string()))
    }
}

/// Resolves flags > `$KOBO_OUT_DIR` (output dir only) > file > defaults.
pub fn parse_config(
    flags: ConfigLayer,
    file: Option<ConfigLayer>,
    env_output_dir: Option<PathBuf>,
) -> Result<ExperimentConfig, HarnessError> {
    let env = ConfigLayer {
        output_dir: env_output_dir,
        ..Default::default()
    };
    let merged = flags.over(env).over(file.unwrap_or_default());

    let problem = merged
        .problem
        .ok_or_else(|| HarnessError::Usage("no problem given (use --problem)".into()))?;
    let benchmark = lookup(&problem).map_err(|e| HarnessError::Usage(e.to_string()))?;

    let methods = merged
        .methods
        .unwrap_or_else(|| vec!["erm-tgp".into()])
        .iter()
        .flat_map(|m| {
            m.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect::<Vec<_>>()
        })
        .map(|m| m.parse::<MethodSpec>().map_err(HarnessError::Usage))
        .collect::<Result<Vec<_>, _>>()?;
    if methods.is_empty() {
        return Err(HarnessError::Usage("no methods given".into()));
    }

    let reps = merged.reps.unwrap_or(DEFAULT_REPS);
    if reps == 0 {
        return Err(HarnessError::Usage("reps must be at least 1".into()));
    }
    if let Some(n) = merged.n_init {
        if n < 2 {
            return Err(HarnessError::Usage("n_init must be at least 2".into()));
        }
    }
    let delta = merged.delta.unwrap_or(DEFAULT_DELTA);
    if !(delta > 0.0 && delta < 1.0) {
        return Err(HarnessError::Usage(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let fstar_declared = merged
        .fstar_declared
        .unwrap_or_else(|| vec![benchmark.f_true_star]);
    if fstar_declared.is_empty() || fstar_declared.iter().any(|f| !f.is_finite()) {
        return Err(HarnessError::Usage(
            "declared f* values must be finite and nonempty".into(),
        ));
    }
    let m0_mode = match merged.m0_mode {
        Some(s) => s.parse().map_err(HarnessError::Usage)?,
        None => M0Mode::default(),
    };

    Ok(ExperimentConfig {
        problem,
        methods,
        iters: merged.iters.unwrap_or(DEFAULT_ITERS),
        n_init: merged.n_init,
        reps,
        seed: merged.seed.unwrap_or(0),
        fstar_declared,
        delta,
        m0_mode,
        output_dir: merged
            .output_dir
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR)),
    })
}

/// Parses a comma-separated list of reals.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}
