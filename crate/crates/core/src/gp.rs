//! Exact Gaussian-process regression with the squared-exponential kernel
//! `k(a, b) = exp(−‖a − b‖² / σ_l)` and unit signal variance.
//!
//! Observations are treated as noiseless; a small diagonal jitter keeps the
//! Gram matrix factorizable. When the Cholesky factorization fails the jitter
//! is escalated ×10 up to [`MAX_JITTER`] before giving up.

use crate::data::ObservationSet;
use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use std::f64::consts::PI;
use thiserror::Error;

pub const DEFAULT_JITTER: f64 = 1e-6;
pub const MAX_JITTER: f64 = 1e-2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GpError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid kernel parameters: lengthscale={lengthscale}, jitter={jitter}")]
    InvalidParams { lengthscale: f64, jitter: f64 },
    #[error("cannot condition a GP on an empty data set")]
    Empty,
    #[error("{inputs} inputs but {targets} targets")]
    LengthMismatch { inputs: usize, targets: usize },
    #[error("Cholesky factorization failed for jitter ladder {ladder:?}")]
    Cholesky { ladder: Vec<f64> },
    #[error("lengthscale selection failed: no grid entry could be factorized")]
    Selection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    /// σ_l, in unit-cube input coordinates.
    pub lengthscale: f64,
    pub jitter: f64,
    /// Prior mean in the units of the regression targets.
    pub prior_mean: f64,
}

impl Default for KernelParams {
    fn default() -> Self {
        Self {
            lengthscale: 0.1,
            jitter: DEFAULT_JITTER,
            prior_mean: 0.0,
        }
    }
}

impl KernelParams {
    pub fn new(lengthscale: f64, jitter: f64, prior_mean: f64) -> Result<Self, GpError> {
        let p = Self {
            lengthscale,
            jitter,
            prior_mean,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_lengthscale(self, lengthscale: f64) -> Self {
        Self {
            lengthscale,
            ..self
        }
    }

    pub fn with_prior_mean(self, prior_mean: f64) -> Self {
        Self { prior_mean, ..self }
    }

    fn validate(&self) -> Result<(), GpError> {
        let ok = self.lengthscale > 0.0
            && self.lengthscale.is_finite()
            && self.jitter > 0.0
            && self.jitter.is_finite()
            && self.prior_mean.is_finite();
        if ok {
            Ok(())
        } else {
            Err(GpError::InvalidParams {
                lengthscale: self.lengthscale,
                jitter: self.jitter,
            })
        }
    }
}

/// 25 log-spaced lengthscales spanning [0.01, 10].
pub fn default_lengthscale_grid() -> Vec<f64> {
    let (lo, hi, n) = (0.01f64, 10.0f64, 25);
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn kernel_eval(a: &[f64], b: &[f64], params: &KernelParams) -> Result<f64, GpError> {
    if a.len() != b.len() {
        return Err(GpError::DimensionMismatch(a.len(), b.len()));
    }
    params.validate()?;
    Ok((-sq_dist(a, b) / params.lengthscale).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictiveMoments {
    pub mean: f64,
    pub std: f64,
}

impl PredictiveMoments {
    pub fn new(mean: f64, std: f64) -> Self {
        Self { mean, std }
    }
}

fn gram(inputs: &[Vec<f64>], lengthscale: f64) -> DMatrix<f64> {
    let n = inputs.len();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else {
            (-sq_dist(&inputs[i], &inputs[j]) / lengthscale).exp()
        }
    })
}

/// Factorizes `K + jitter·I`, escalating the jitter on failure. Returns the
/// factor and the jitter that succeeded.
fn factorize(k: &DMatrix<f64>, jitter: f64) -> Result<(Cholesky<f64, Dyn>, f64), GpError> {
    let mut ladder = Vec::new();
    let mut j = jitter;
    loop {
        if (j - MAX_JITTER).abs() <= 1e-9 * MAX_JITTER {
            j = MAX_JITTER;
        }
        ladder.push(j);
        let mut m = k.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += j;
        }
        if let Some(chol) = Cholesky::new(m) {
            let l = chol.l_dirty();
            if (0..l.nrows()).all(|i| l[(i, i)] > 0.0 && l[(i, i)].is_finite()) {
                return Ok((chol, j));
            }
        }
        if j >= MAX_JITTER {
            return Err(GpError::Cholesky { ladder });
        }
        j = (j * 10.0).min(MAX_JITTER);
    }
}

fn check_inputs(inputs: &[Vec<f64>], targets: &[f64]) -> Result<usize, GpError> {
    if inputs.is_empty() {
        return Err(GpError::Empty);
    }
    if inputs.len() != targets.len() {
        return Err(GpError::LengthMismatch {
            inputs: inputs.len(),
            targets: targets.len(),
        });
    }
    let d = inputs[0].len();
    if let Some(bad) = inputs.iter().find(|x| x.len() != d) {
        return Err(GpError::DimensionMismatch(d, bad.len()));
    }
    Ok(d)
}

/// A GP conditioned on a fixed data set. Immutable after [`GpModel::fit`].
#[derive(Debug, Clone)]
pub struct GpModel {
    params: KernelParams,
    inputs: Vec<Vec<f64>>,
    chol: Cholesky<f64, Dyn>,
    weights: DVector<f64>,
    log_likelihood: f64,
}

impl GpModel {
    /// Conditions on `(inputs, targets)`. The returned model's `params().jitter`
    /// is the jitter actually used, which may exceed the requested one.
    pub fn fit(
        inputs: &[Vec<f64>],
        targets: &[f64],
        params: KernelParams,
    ) -> Result<Self, GpError> {
        check_inputs(inputs, targets)?;
        params.validate()?;
        let k = gram(inputs, params.lengthscale);
        let (chol, jitter) = factorize(&k, params.jitter)?;
        let centered =
            DVector::from_iterator(targets.len(), targets.iter().map(|y| y - params.prior_mean));
        let weights = chol.solve(&centered);
        let n = targets.len() as f64;
        let l = chol.l_dirty();
        let log_det_half: f64 = (0..l.nrows()).map(|i| l[(i, i)].ln()).sum();
        let log_likelihood =
            -0.5 * centered.dot(&weights) - log_det_half - 0.5 * n * (2.0 * PI).ln();
        Ok(Self {
            params: KernelParams { jitter, ..params },
            inputs: inputs.to_vec(),
            chol,
            weights,
            log_likelihood,
        })
    }

    /// Fits on the standardized outputs of `data`.
    pub fn fit_observations(data: &ObservationSet, params: KernelParams) -> Result<Self, GpError> {
        Self::fit(data.inputs(), data.y_std(), params)
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn dim(&self) -> usize {
        self.inputs[0].len()
    }

    /// Lower-triangular factor of the jittered Gram matrix.
    pub fn cholesky_factor(&self) -> DMatrix<f64> {
        self.chol.l()
    }

    pub fn weights(&self) -> &DVector<f64> {
        &self.weights
    }

    pub fn log_marginal_likelihood(&self) -> f64 {
        self.log_likelihood
    }

    /// # Panics
    /// If `x` does not have the model's input dimension.
    pub fn predict(&self, x: &[f64]) -> PredictiveMoments {
        assert_eq!(x.len(), self.dim(), "predict: point dimension mismatch");
        let ls = self.params.lengthscale;
        let kstar = DVector::from_iterator(
            self.inputs.len(),
            self.inputs.iter().map(|xi| (-sq_dist(xi, x) / ls).exp()),
        );
        let mean = self.params.prior_mean + kstar.dot(&self.weights);
        let v = self
            .chol
            .l_dirty()
            .solve_lower_triangular(&kstar)
            .expect("Cholesky factor has a positive diagonal");
        let var = (1.0 - v.norm_squared()).max(0.0);
        PredictiveMoments {
            mean,
            std: var.sqrt(),
        }
    }
}

/// `−½(y−m)ᵀ(K+jI)⁻¹(y−m) − Σ log Lᵢᵢ − (n/2) log 2π`.
pub fn log_marginal_likelihood(
    inputs: &[Vec<f64>],
    targets: &[f64],
    params: KernelParams,
) -> Result<f64, GpError> {
    GpModel::fit(inputs, targets, params).map(|m| m.log_likelihood)
}

/// Picks the grid lengthscale with the highest marginal likelihood. Entries
/// that cannot be factorized are skipped; ties go to the smaller lengthscale.
pub fn select_lengthscale(
    inputs: &[Vec<f64>],
    targets: &[f64],
    base: KernelParams,
    grid: &[f64],
) -> Result<KernelParams, GpError> {
    best_model_on_grid(inputs, targets, base, grid).map(|m| KernelParams {
        jitter: base.jitter,
        ..m.params
    })
}

/// Same search as [`select_lengthscale`] but returns the fitted winner.
pub fn best_model_on_grid(
    inputs: &[Vec<f64>],
    targets: &[f64],
    base: KernelParams,
    grid: &[f64],
) -> Result<GpModel, GpError> {
    check_inputs(inputs, targets)?;
    if let Some(&bad) = grid.iter().find(|&&l| !(l > 0.0 && l.is_finite())) {
        return Err(GpError::InvalidParams {
            lengthscale: bad,
            jitter: base.jitter,
        });
    }
    let mut best: Option<GpModel> = None;
    for &ls in grid {
        let model = match GpModel::fit(inputs, targets, base.with_lengthscale(ls)) {
            Ok(m) => m,
            Err(GpError::Cholesky { .. }) => continue,
            Err(e) => return Err(e),
        };
        let better = match &best {
            None => true,
            Some(b) => {
                model.log_likelihood > b.log_likelihood
                    || (model.log_likelihood == b.log_likelihood
                        && model.params.lengthscale < b.params.lengthscale)
            }
        };
        if better {
            best = Some(model);
        }
    }
    best.ok_or(GpError::Selection)
}
