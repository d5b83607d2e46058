//! Closed-form acquisition functions and the exploration schedule β_t.
//!
//! EI, GP-UCB, EI* and MES* are maximized; CBM and ERM are minimized.
//! Every function takes predictive moments in standardized output units.

use crate::gp::PredictiveMoments;
use crate::normal::{pdf_over_cdf, std_normal_cdf, std_normal_log_cdf, std_normal_pdf};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const DEFAULT_DELTA: f64 = 0.1;
pub const BETA_FLOOR: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AcqError {
    #[error("{0} requires a known optimum value")]
    MissingFStar(AcquisitionKind),
    #[error("{0} requires an exploration weight beta")]
    MissingBeta(AcquisitionKind),
    #[error("MES* undefined: zero predictive std with mean {mean} above f* = {f_star}")]
    MesUndefined { mean: f64, f_star: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    /// Maps a value to a score where larger is always better; non-finite
    /// values score worst.
    pub fn score(self, value: f64) -> f64 {
        if !value.is_finite() {
            return f64::NEG_INFINITY;
        }
        match self {
            Direction::Maximize => value,
            Direction::Minimize => -value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AcquisitionKind {
    Ei,
    Ucb,
    EiStar,
    MesStar,
    Cbm,
    Erm,
}

impl AcquisitionKind {
    pub const ALL: [AcquisitionKind; 6] = [
        AcquisitionKind::Ei,
        AcquisitionKind::Ucb,
        AcquisitionKind::EiStar,
        AcquisitionKind::MesStar,
        AcquisitionKind::Cbm,
        AcquisitionKind::Erm,
    ];

    pub fn direction(self) -> Direction {
        match self {
            AcquisitionKind::Cbm | AcquisitionKind::Erm => Direction::Minimize,
            _ => Direction::Maximize,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AcquisitionKind::Ei => "ei",
            AcquisitionKind::Ucb => "ucb",
            AcquisitionKind::EiStar => "eistar",
            AcquisitionKind::MesStar => "messtar",
            AcquisitionKind::Cbm => "cbm",
            AcquisitionKind::Erm => "erm",
        }
    }

    /// Whether the acquisition itself consumes the known optimum.
    pub fn uses_f_star(self) -> bool {
        !matches!(self, AcquisitionKind::Ei | AcquisitionKind::Ucb)
    }

    pub fn evaluate(self, m: PredictiveMoments, ctx: &AcquisitionContext) -> Result<f64, AcqError> {
        match self {
            AcquisitionKind::Ei => Ok(acq_ei(m, ctx)),
            AcquisitionKind::Ucb => acq_ucb(m, ctx),
            AcquisitionKind::EiStar => acq_ei_star(m, ctx),
            AcquisitionKind::MesStar => acq_mes_star(m, ctx),
            AcquisitionKind::Cbm => acq_cbm(m, ctx),
            AcquisitionKind::Erm => acq_erm(m, ctx),
        }
    }
}

impl fmt::Display for AcquisitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AcquisitionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AcquisitionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = AcquisitionKind::ALL.iter().map(|k| k.name()).collect();
                format!(
                    "unknown acquisition `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// Everything an acquisition needs besides the predictive moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcquisitionContext {
    pub f_star_std: Option<f64>,
    /// ξ for EI, standardized.
    pub incumbent: f64,
    pub beta: Option<f64>,
    pub delta: f64,
    pub t: usize,
}

impl Default for AcquisitionContext {
    fn default() -> Self {
        Self {
            f_star_std: None,
            incumbent: 0.0,
            beta: None,
            delta: DEFAULT_DELTA,
            t: 1,
        }
    }
}

impl AcquisitionContext {
    fn f_star(&self, kind: AcquisitionKind) -> Result<f64, AcqError> {
        self.f_star_std.ok_or(AcqError::MissingFStar(kind))
    }

    fn beta(&self, kind: AcquisitionKind) -> Result<f64, AcqError> {
        self.beta.ok_or(AcqError::MissingBeta(kind))
    }
}

/// `E[max(0, f − ξ)]` for `f ~ N(μ, σ²)`.
fn expected_excess(mu: f64, sigma: f64, threshold: f64) -> f64 {
    if sigma > 0.0 {
        let z = (mu - threshold) / sigma;
        (sigma * std_normal_pdf(z) + (mu - threshold) * std_normal_cdf(z)).max(0.0)
    } else {
        (mu - threshold).max(0.0)
    }
}

pub fn acq_ei(m: PredictiveMoments, ctx: &AcquisitionContext) -> f64 {
    expected_excess(m.mean, m.std, ctx.incumbent)
}

pub fn acq_ucb(m: PredictiveMoments, ctx: &AcquisitionContext) -> Result<f64, AcqError> {
    let beta = ctx.beta(AcquisitionKind::Ucb)?;
    Ok(m.mean + beta.sqrt() * m.std)
}

/// EI with the known optimum as incumbent.
pub fn acq_ei_star(m: PredictiveMoments, ctx: &AcquisitionContext) -> Result<f64, AcqError> {
    let f_star = ctx.f_star(AcquisitionKind::EiStar)?;
    Ok(expected_excess(m.mean, m.std, f_star))
}

/// Entropy reduction of the predictive distribution when truncated at f*:
/// `γφ(γ)/(2Φ(γ)) − ln Φ(γ)`, `γ = (f* − μ)/σ`.
pub fn acq_mes_star(m: PredictiveMoments, ctx: &AcquisitionContext) -> Result<f64, AcqError> {
    let f_star = ctx.f_star(AcquisitionKind::MesStar)?;
    if m.std <= 0.0 {
        return if m.mean <= f_star {
            Ok(0.0)
        } else {
            Err(AcqError::MesUndefined {
                mean: m.mean,
                f_star,
            })
        };
    }
    Ok(mes_of_gamma((f_star - m.mean) / m.std))
}

pub(crate) fn mes_of_gamma(gamma: f64) -> f64 {
    0.5 * gamma * pdf_over_cdf(gamma) - std_normal_log_cdf(gamma)
}

/// Confidence bound minimization: `|μ − f*| + √β σ`.
pub fn acq_cbm(m: PredictiveMoments, ctx: &AcquisitionContext) -> Result<f64, AcqError> {
    let f_star = ctx.f_star(AcquisitionKind::Cbm)?;
    let beta = ctx.beta(AcquisitionKind::Cbm)?;
    Ok((m.mean - f_star).abs() + beta.sqrt() * m.std)
}

/// Expected regret `E[max(0, f* − f)]`: `σφ(z) + (f* − μ)Φ(z)`, `z = (f* − μ)/σ`.
pub fn acq_erm(m: PredictiveMoments, ctx: &AcquisitionContext) -> Result<f64, AcqError> {
    let f_star = ctx.f_star(AcquisitionKind::Erm)?;
    if m.std > 0.0 {
        let z = (f_star - m.mean) / m.std;
        Ok((m.std * std_normal_pdf(z) + (f_star - m.mean) * std_normal_cdf(z)).max(0.0))
    } else {
        Ok((f_star - m.mean).max(0.0))
    }
}

/// `β_t = max(β_floor, 2 f* + 300 ln³(t/δ))`.
///
/// # Panics
/// If `t == 0` or `δ ∉ (0, 1)`.
pub fn beta_schedule(t: usize, f_star_std: f64, delta: f64) -> f64 {
    assert!(t >= 1, "beta_schedule: t must be at least 1");
    assert!(
        delta > 0.0 && delta < 1.0,
        "beta_schedule: delta must lie in (0, 1)"
    );
    let beta = 2.0 * f_star_std + 300.0 * (t as f64 / delta).ln().powi(3);
    if beta.is_nan() {
        BETA_FLOOR
    } else {
        beta.max(BETA_FLOOR)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PDF1: f64 = 0.241_970_724_519_143_37;
    const CDF1: f64 = 0.841_344_746_068_542_9;
    const PDF0: f64 = 0.398_942_280_401_432_7;

    fn ctx(f_star: f64, beta: f64, incumbent: f64) -> AcquisitionContext {
        AcquisitionContext {
            f_star_std: Some(f_star),
            beta: Some(beta),
            incumbent,
            ..Default::default()
        }
    }

    fn m(mean: f64, std: f64) -> PredictiveMoments {
        PredictiveMoments::new(mean, std)
    }

    #[test]
    fn ei_examples() {
        let c = ctx(0.0, 1.0, 0.3);
        assert!((acq_ei(m(0.3, 1.0), &c) - PDF0).abs() < 1e-12);
        assert_eq!(acq_ei(m(-0.7, 0.0), &c), 0.0);
        assert!((acq_ei(m(1.3, 1.0), &c) - 1.083_315_470_587_686_4).abs() < 1e-12);
    }

    #[test]
    fn ucb_examples() {
        assert_eq!(acq_ucb(m(0.0, 1.0), &ctx(0.0, 4.0, 0.0)).unwrap(), 2.0);
        assert_eq!(acq_ucb(m(0.7, 3.0), &ctx(0.0, 0.0, 0.0)).unwrap(), 0.7);
        assert_eq!(acq_ucb(m(0.7, 0.0), &ctx(0.0, 1e4, 0.0)).unwrap(), 0.7);
        assert!(acq_ucb(m(0.0, 1.0), &AcquisitionContext::default()).is_err());
    }

    #[test]
    fn ei_star_examples() {
        let c = ctx(2.0, 1.0, 0.0);
        assert!((acq_ei_star(m(2.0, 1.0), &c).unwrap() - PDF0).abs() < 1e-12);
        assert!((acq_ei_star(m(1.0, 1.0), &c).unwrap() - 0.083_315_470_587_686_29).abs() < 1e-12);
        assert_eq!(acq_ei_star(m(1.0, 0.0), &c).unwrap(), 0.0);
        assert_eq!(
            acq_ei_star(m(1.0, 1.0), &AcquisitionContext::default()),
            Err(AcqError::MissingFStar(AcquisitionKind::EiStar))
        );
    }

    #[test]
    fn mes_star_examples() {
        let c = ctx(1.0, 1.0, 0.0);
        assert!((acq_mes_star(m(1.0, 2.0), &c).unwrap() - 2f64.ln()).abs() < 1e-12);
        let v = acq_mes_star(m(0.0, 1.0), &c).unwrap();
        assert!((v - 0.316_553_764_493_039_07).abs() < 1e-12);
        assert!((v - 0.316547).abs() < 1e-5);
        assert!(acq_mes_star(m(-40.0, 1.0), &c).unwrap() < 1e-12);
        assert_eq!(acq_mes_star(m(0.0, 0.0), &c).unwrap(), 0.0);
        assert!(matches!(
            acq_mes_star(m(2.0, 0.0), &c),
            Err(AcqError::MesUndefined { .. })
        ));
    }

    #[test]
    fn mes_star_lower_tail_is_finite() {
        let v = mes_of_gamma(-45.0);
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn cbm_examples() {
        assert_eq!(acq_cbm(m(1.5, 0.0), &ctx(1.5, 4.0, 0.0)).unwrap(), 0.0);
        assert_eq!(acq_cbm(m(0.5, 0.5), &ctx(1.5, 4.0, 0.0)).unwrap(), 2.0);
        let c = ctx(0.8, 3.0, 0.0);
        let a = acq_cbm(m(0.3, 0.2), &c).unwrap();
        let b = acq_cbm(m(2.0 * 0.8 - 0.3, 0.2), &c).unwrap();
        assert!((a - b).abs() < 1e-15);
        let no_beta = AcquisitionContext {
            f_star_std: Some(0.0),
            ..Default::default()
        };
        assert!(matches!(
            acq_cbm(m(0.0, 1.0), &no_beta),
            Err(AcqError::MissingBeta(_))
        ));
    }

    #[test]
    fn erm_examples() {
        let c = ctx(1.0, 1.0, 0.0);
        assert_eq!(acq_erm(m(1.0, 0.0), &c).unwrap(), 0.0);
        assert!((acq_erm(m(0.0, 1.0), &c).unwrap() - (PDF1 + CDF1)).abs() < 1e-12);
        assert!((acq_erm(m(1.0, 1.0), &c).unwrap() - PDF0).abs() < 1e-12);
        assert!(acq_erm(m(1.0, 1.0), &AcquisitionContext::default()).is_err());
    }

    #[test]
    fn beta_examples() {
        let b = beta_schedule(1, 1.0, 0.1);
        assert!((b - 3_664.421_466_128_258_5).abs() < 1e-8);
        assert_eq!(beta_schedule(1, -1e6, 0.1), BETA_FLOOR);
        let mut prev = 0.0;
        for t in 1..200 {
            let b = beta_schedule(t, 0.5, 0.1);
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn directions_and_names() {
        for k in AcquisitionKind::ALL {
            assert_eq!(k.name().parse::<AcquisitionKind>().unwrap(), k);
        }
        assert_eq!(AcquisitionKind::Erm.direction(), Direction::Minimize);
        assert_eq!(AcquisitionKind::Cbm.direction(), Direction::Minimize);
        assert_eq!(AcquisitionKind::MesStar.direction(), Direction::Maximize);
        assert!("bogus"
            .parse::<AcquisitionKind>()
            .unwrap_err()
            .contains("erm"));
        assert_eq!(Direction::Minimize.score(f64::NAN), f64::NEG_INFINITY);
    }
}
