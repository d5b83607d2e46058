//! Transformed GP surrogate that never predicts above a known optimum.
//!
//! Outputs are mapped to `g = √(2(f* − y))`, a GP is fitted to `g`, and the
//! map `f = f* − ½g²` is linearized around the posterior mean of `g`:
//!
//! ```text
//! μ_f = f* − ½ μ_g²        σ_f = |μ_g| σ_g
//! ```
//!
//! All quantities live in standardized output units; `f*` is standardized
//! with the same affine map as the observations.

use crate::data::ObservationSet;
use crate::gp::{best_model_on_grid, GpError, GpModel, KernelParams, PredictiveMoments};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Overshoot of `y` above `f*` (standardized units) absorbed as rounding.
pub const CLIP_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TgpError {
    #[error(
        "observed value {observed} exceeds the declared optimum {declared} (standardized units)"
    )]
    KnownOptimumViolated { observed: f64, declared: f64 },
    #[error(transparent)]
    Gp(#[from] GpError),
}

/// Prior mean of the latent `g` process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum M0Mode {
    Zero,
    #[default]
    Sqrt2FStar,
}

impl fmt::Display for M0Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            M0Mode::Zero => "zero",
            M0Mode::Sqrt2FStar => "sqrt2fstar",
        })
    }
}

impl FromStr for M0Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" => Ok(M0Mode::Zero),
            "sqrt2fstar" => Ok(M0Mode::Sqrt2FStar),
            other => Err(format!(
                "unknown m0 mode `{other}` (expected zero | sqrt2fstar)"
            )),
        }
    }
}

impl M0Mode {
    pub fn prior_mean(self, f_star_std: f64) -> f64 {
        match self {
            M0Mode::Zero => 0.0,
            M0Mode::Sqrt2FStar => (2.0 * f_star_std.max(0.0)).sqrt(),
        }
    }
}

pub fn to_g_space(y_std: f64, f_star_std: f64) -> Result<f64, TgpError> {
    if y_std > f_star_std + CLIP_EPS {
        return Err(TgpError::KnownOptimumViolated {
            observed: y_std,
            declared: f_star_std,
        });
    }
    Ok((2.0 * (f_star_std - y_std).max(0.0)).sqrt())
}

pub fn from_g_space(g: f64, f_star_std: f64) -> f64 {
    f_star_std - 0.5 * g * g
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TgpPosterior {
    pub mu_f: f64,
    pub sigma_f: f64,
    pub mu_g: f64,
    pub sigma_g: f64,
}

impl TgpPosterior {
    /// Linearizes the `g`-space moments into moments of `f`.
    pub fn from_g_moments(g: PredictiveMoments, f_star_std: f64) -> Self {
        Self {
            mu_f: f_star_std - 0.5 * g.mean * g.mean,
            sigma_f: g.mean.abs() * g.std,
            mu_g: g.mean,
            sigma_g: g.std,
        }
    }

    pub fn moments(&self) -> PredictiveMoments {
        PredictiveMoments::new(self.mu_f, self.sigma_f)
    }
}

#[derive(Debug, Clone)]
pub struct TgpModel {
    f_star_std: f64,
    m0: f64,
    g_values: Vec<f64>,
    inner: GpModel,
}

fn g_values(data: &ObservationSet, f_star_raw: f64) -> Result<(f64, Vec<f64>), TgpError> {
    let f_star_std = data.standardizer().standardize(f_star_raw);
    let g = data
        .y_std()
        .iter()
        .map(|&y| to_g_space(y, f_star_std))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((f_star_std, g))
}

impl TgpModel {
    /// Fits the latent GP with fixed kernel parameters; `params.prior_mean`
    /// is replaced by the `m0` implied by `mode`.
    pub fn fit(
        data: &ObservationSet,
        f_star_raw: f64,
        params: KernelParams,
        mode: M0Mode,
    ) -> Result<Self, TgpError> {
        let (f_star_std, g_values) = g_values(data, f_star_raw)?;
        let m0 = mode.prior_mean(f_star_std);
        let inner = GpModel::fit(data.inputs(), &g_values, params.with_prior_mean(m0))?;
        Ok(Self {
            f_star_std,
            m0,
            g_values,
            inner,
        })
    }

    /// Like [`TgpModel::fit`] but picks the lengthscale by marginal
    /// likelihood of the `g` observations over `grid`.
    pub fn fit_with_grid(
        data: &ObservationSet,
        f_star_raw: f64,
        base: KernelParams,
        mode: M0Mode,
        grid: &[f64],
    ) -> Result<Self, TgpError> {
        let (f_star_std, g_values) = g_values(data, f_star_raw)?;
        let m0 = mode.prior_mean(f_star_std);
        let inner = best_model_on_grid(data.inputs(), &g_values, base.with_prior_mean(m0), grid)?;
        Ok(Self {
            f_star_std,
            m0,
            g_values,
            inner,
        })
    }

    pub fn f_star_std(&self) -> f64 {
        self.f_star_std
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn g_values(&self) -> &[f64] {
        &self.g_values
    }

    pub fn inner(&self) -> &GpModel {
        &self.inner
    }

    pub fn predict(&self, x: &[f64]) -> TgpPosterior {
        TgpPosterior::from_g_moments(self.inner.predict(x), self.f_star_std)
    }
}
