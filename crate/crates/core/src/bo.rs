//! Bayesian optimization with a known optimum value.
//!
//! A run starts from a Latin-hypercube design, then warm-starts with a
//! vanilla GP and EI until the upper confidence bound can reach `f*`, after
//! which it switches to the configured surrogate and acquisition. The loop
//! ends after `T` iterations or once an observation attains `f*`.

use crate::acquisition::{
    acq_ei, acq_ucb, beta_schedule, AcquisitionContext, AcquisitionKind, Direction, DEFAULT_DELTA,
};
use crate::benchmarks::simple_regret;
use crate::data::{DataError, Domain, ObservationSet};
use crate::gp::{
    best_model_on_grid, default_lengthscale_grid, GpError, GpModel, KernelParams,
    PredictiveMoments, DEFAULT_JITTER,
};
use crate::optimize::{optimize_acquisition, optimize_acquisition_with, SearchBudget};
use crate::tgp::{M0Mode, TgpError, TgpModel};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{0}")]
pub struct ObjectiveError(pub String);

/// A black-box objective over original-unit points. Implementations must be
/// deterministic or own their noise.
pub trait Objective: Send + Sync {
    fn evaluate(&self, x: &[f64]) -> Result<f64, ObjectiveError>;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Result<f64, ObjectiveError> {
        Ok(self(x))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("objective failed at evaluation {iter} (x = {x:?}): {source}")]
    Objective {
        iter: usize,
        x: Vec<f64>,
        source: ObjectiveError,
    },
    #[error("objective returned non-finite value {value} at evaluation {iter} (x = {x:?})")]
    NonFinite {
        iter: usize,
        x: Vec<f64>,
        value: f64,
    },
    #[error("declared optimum {f_star_declared} is misspecified at iteration {t}: {source}")]
    Misspecified {
        t: usize,
        f_star_declared: f64,
        source: TgpError,
    },
    #[error("surrogate fit failed at iteration {t}: {source}")]
    Surrogate { t: usize, source: GpError },
    #[error(transparent)]
    Data(#[from] DataError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Surrogate {
    Gp,
    Tgp,
}

impl fmt::Display for Surrogate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surrogate::Gp => "gp",
            Surrogate::Tgp => "tgp",
        })
    }
}

impl FromStr for Surrogate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gp" => Ok(Surrogate::Gp),
            "tgp" => Ok(Surrogate::Tgp),
            other => Err(format!("unknown surrogate `{other}` (expected gp, tgp)")),
        }
    }
}

/// An acquisition paired with the surrogate it runs on, written `erm-tgp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MethodSpec {
    pub acquisition: AcquisitionKind,
    pub surrogate: Surrogate,
}

impl MethodSpec {
    pub fn new(acquisition: AcquisitionKind, surrogate: Surrogate) -> Self {
        Self {
            acquisition,
            surrogate,
        }
    }

    /// Methods that exploit `f*` get the GP+EI warm start.
    pub fn uses_f_star(&self) -> bool {
        self.acquisition.uses_f_star() || self.surrogate == Surrogate::Tgp
    }

    pub fn all() -> Vec<MethodSpec> {
        AcquisitionKind::ALL
            .into_iter()
            .flat_map(|a| [Surrogate::Gp, Surrogate::Tgp].map(|s| MethodSpec::new(a, s)))
            .collect()
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.acquisition, self.surrogate)
    }
}

impl FromStr for MethodSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || {
            let names: Vec<String> = MethodSpec::all().iter().map(|m| m.to_string()).collect();
            format!("unknown method `{s}`; valid methods: {}", names.join(", "))
        };
        let (acq, sur) = s.rsplit_once('-').ok_or_else(invalid)?;
        Ok(MethodSpec {
            acquisition: acq.parse().map_err(|_| invalid())?,
            surrogate: sur.parse().map_err(|_| invalid())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Init,
    Warmstart,
    Informed,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Init => "init",
            Phase::Warmstart => "warmstart",
            Phase::Informed => "informed",
        })
    }
}

impl FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "init" => Ok(Phase::Init),
            "warmstart" => Ok(Phase::Warmstart),
            "informed" => Ok(Phase::Informed),
            other => Err(format!("unknown phase `{other}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoConfig {
    pub domain: Domain,
    /// Optimum value handed to the algorithm; may deliberately be wrong.
    pub f_star_declared: f64,
    /// Reference for regret reporting; the declared value when `None`.
    pub f_star_true: Option<f64>,
    pub method: MethodSpec,
    /// Number of iterations after the initial design (T).
    pub max_iters: usize,
    pub n_init: usize,
    pub seed: u64,
    pub delta: f64,
    pub m0_mode: M0Mode,
    pub stop_epsilon: f64,
    pub warm_start: bool,
    pub jitter: f64,
    pub lengthscale_grid: Vec<f64>,
    /// Acquisition search budget; `SearchBudget::for_dim` when `None`.
    pub search: Option<SearchBudget>,
}

impl BoConfig {
    /// Defaults: `n_init = 3d`, `δ = 0.1`, `T = 40`, `ε_stop = 1e−8·max(1, |f*|)`.
    pub fn new(domain: Domain, f_star_declared: f64, method: MethodSpec) -> Self {
        let n_init = (3 * domain.dim()).max(2);
        Self {
            domain,
            f_star_declared,
            f_star_true: None,
            method,
            max_iters: 40,
            n_init,
            seed: 0,
            delta: DEFAULT_DELTA,
            m0_mode: M0Mode::default(),
            stop_epsilon: default_stop_epsilon(f_star_declared),
            warm_start: method.uses_f_star(),
            jitter: DEFAULT_JITTER,
            lengthscale_grid: default_lengthscale_grid(),
            search: None,
        }
    }

    pub fn validate(&self) -> Result<(), BoError> {
        let err = |m: &str| Err(BoError::Config(m.to_string()));
        if self.n_init < 2 {
            return err("n_init must be at least 2");
        }
        if self.stop_epsilon.is_nan() || self.stop_epsilon < 0.0 {
            return err("stop epsilon must be nonnegative");
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return err("delta must lie in (0, 1)");
        }
        if !self.f_star_declared.is_finite() {
            return err("declared optimum must be finite");
        }
        if self.lengthscale_grid.is_empty() {
            return err("lengthscale grid is empty");
        }
        if self.jitter.is_nan() || self.jitter <= 0.0 {
            return err("jitter must be positive");
        }
        Ok(())
    }

    pub fn regret_reference(&self) -> f64 {
        self.f_star_true.unwrap_or(self.f_star_declared)
    }

    fn budget(&self) -> SearchBudget {
        self.search
            .unwrap_or_else(|| SearchBudget::for_dim(self.domain.dim()))
    }

    fn base_params(&self) -> KernelParams {
        KernelParams {
            lengthscale: self.lengthscale_grid[0],
            jitter: self.jitter,
            prior_mean: 0.0,
        }
    }
}

pub fn default_stop_epsilon(f_star: f64) -> f64 {
    1e-8 * f_star.abs().max(1.0)
}

/// Latin-hypercube design in original units: along every axis each of the
/// `n` equal strata holds exactly one point.
pub fn initial_design(domain: &Domain, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    latin_hypercube(domain.dim(), n, &mut rng)
        .iter()
        .map(|u| domain.from_unit(u))
        .collect()
}

fn latin_hypercube<R: Rng>(dim: usize, n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut points = vec![vec![0.0; dim]; n];
    for j in 0..dim {
        let mut strata: Vec<usize> = (0..n).collect();
        strata.shuffle(rng);
        for (p, s) in points.iter_mut().zip(strata) {
            p[j] = (s as f64 + rng.gen::<f64>()) / n as f64;
        }
    }
    points
}

/// True iff `max_x μ(x) + √β σ(x) ≥ f*`. Training points are scored along
/// with the random search so a data point already at `f*` always counts.
pub fn reach_check(
    gp: &GpModel,
    f_star_std: f64,
    beta: f64,
    budget: &SearchBudget,
    seed: u64,
) -> bool {
    let ctx = AcquisitionContext {
        beta: Some(beta),
        ..Default::default()
    };
    let ucb = |x: &[f64]| acq_ucb(gp.predict(x), &ctx).unwrap_or(f64::NAN);
    let (_, best) = optimize_acquisition_with(
        ucb,
        Direction::Maximize,
        gp.dim(),
        budget,
        seed,
        gp.inputs(),
    );
    best >= f_star_std
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// 1-based evaluation index, counting the initial design.
    pub iter: usize,
    /// Evaluated point in original units.
    pub x: Vec<f64>,
    pub y: f64,
    pub best: f64,
    pub regret: f64,
    pub phase: Phase,
    /// Acquisition value at the chosen point (standardized units).
    pub acquisition_value: Option<f64>,
}

/// Counters exposing what a run actually computed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    pub reach_checks: usize,
    pub g_transforms: usize,
    pub tgp_fits: usize,
    /// Evaluation index of the first informed-phase record.
    pub first_informed_iter: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Budget,
    OptimumReached,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub seed: u64,
    pub method: MethodSpec,
    pub f_star_declared: f64,
    pub f_star_reference: f64,
    pub records: Vec<IterationRecord>,
    pub stats: RunStats,
    pub stop: StopReason,
}

impl RunTrace {
    pub fn ys(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.y).collect()
    }

    pub fn final_regret(&self) -> f64 {
        self.records.last().map_or(f64::INFINITY, |r| r.regret)
    }
}

/// Mutable state of one run; owns its data and random stream.
#[derive(Debug, Clone)]
pub struct RunState {
    pub data: ObservationSet,
    pub phase: Phase,
    /// BO iteration counter, starting at 1 after the initial design.
    pub t: usize,
    pub records: Vec<IterationRecord>,
    pub stats: RunStats,
    rng: ChaCha8Rng,
}

impl RunState {
    /// Draws and evaluates the whole initial design.
    pub fn initialize(config: &BoConfig, objective: &dyn Objective) -> Result<Self, BoError> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let design = latin_hypercube(config.domain.dim(), config.n_init, &mut rng);
        let phase = if config.warm_start {
            Phase::Warmstart
        } else {
            Phase::Informed
        };
        let mut state = Self {
            data: ObservationSet::new(config.domain.clone()),
            phase,
            t: 1,
            records: Vec::with_capacity(config.n_init + config.max_iters),
            stats: RunStats::default(),
            rng,
        };
        for u in design {
            state.evaluate_and_record(config, objective, u, Phase::Init, None)?;
        }
        Ok(state)
    }

    pub fn optimum_reached(&self, config: &BoConfig) -> bool {
        self.data
            .max_raw()
            .is_some_and(|best| config.f_star_declared - best <= config.stop_epsilon)
    }

    pub fn is_finished(&self, config: &BoConfig) -> bool {
        self.t > config.max_iters || self.optimum_reached(config)
    }

    fn evaluate_and_record(
        &mut self,
        config: &BoConfig,
        objective: &dyn Objective,
        unit_x: Vec<f64>,
        phase: Phase,
        acquisition_value: Option<f64>,
    ) -> Result<(), BoError> {
        let iter = self.records.len() + 1;
        let x = config.domain.from_unit(&unit_x);
        let y = objective
            .evaluate(&x)
            .map_err(|source| BoError::Objective {
                iter,
                x: x.clone(),
                source,
            })?;
        if !y.is_finite() {
            return Err(BoError::NonFinite { iter, x, value: y });
        }
        self.data.push(unit_x, y)?;
        let best = self.records.last().map_or(y, |r| r.best.max(y));
        self.records.push(IterationRecord {
            iter,
            x,
            y,
            best,
            regret: config.regret_reference() - best,
            phase,
            acquisition_value,
        });
        Ok(())
    }

    fn fit_gp(&self, config: &BoConfig) -> Result<GpModel, BoError> {
        best_model_on_grid(
            self.data.inputs(),
            self.data.y_std(),
            config.base_params(),
            &config.lengthscale_grid,
        )
        .map_err(|source| BoError::Surrogate { t: self.t, source })
    }

    fn fit_tgp(&mut self, config: &BoConfig) -> Result<TgpModel, BoError> {
        let model = TgpModel::fit_with_grid(
            &self.data,
            config.f_star_declared,
            config.base_params(),
            config.m0_mode,
            &config.lengthscale_grid,
        )
        .map_err(|e| match e {
            TgpError::Gp(source) => BoError::Surrogate { t: self.t, source },
            other => BoError::Misspecified {
                t: self.t,
                f_star_declared: config.f_star_declared,
                source: other,
            },
        })?;
        self.stats.tgp_fits += 1;
        self.stats.g_transforms += self.data.len();
        Ok(model)
    }

    /// One select → evaluate → augment iteration.
    pub fn step(&mut self, config: &BoConfig, objective: &dyn Objective) -> Result<(), BoError> {
        let budget = config.budget();
        let dim = config.domain.dim();
        let f_star_std = self.data.standardizer().standardize(config.f_star_declared);
        let beta = beta_schedule(self.t, f_star_std, config.delta);
        let incumbent = self.data.max_std().unwrap_or(0.0);
        let ctx = AcquisitionContext {
            f_star_std: Some(f_star_std),
            incumbent,
            beta: Some(beta),
            delta: config.delta,
            t: self.t,
        };

        let mut gp = None;
        if self.phase == Phase::Warmstart {
            let model = self.fit_gp(config)?;
            self.stats.reach_checks += 1;
            if reach_check(&model, f_star_std, beta, &budget, self.rng.gen()) {
                self.phase = Phase::Informed;
                self.stats.first_informed_iter = Some(self.records.len() + 1);
            }
            gp = Some(model);
        }

        let seed: u64 = self.rng.gen();
        let (unit_x, value) = if self.phase == Phase::Warmstart {
            let model = gp.as_ref().expect("fitted during warm start");
            optimize_acquisition(
                |x: &[f64]| acq_ei(model.predict(x), &ctx),
                Direction::Maximize,
                dim,
                &budget,
                seed,
            )
        } else {
            let kind = config.method.acquisition;
            let score = |m: PredictiveMoments| kind.evaluate(m, &ctx).unwrap_or(f64::NAN);
            match config.method.surrogate {
                Surrogate::Gp => {
                    let model = match gp {
                        Some(m) => m,
                        None => self.fit_gp(config)?,
                    };
                    optimize_acquisition(
                        |x: &[f64]| score(model.predict(x)),
                        kind.direction(),
                        dim,
                        &budget,
                        seed,
                    )
                }
                Surrogate::Tgp => {
                    let model = self.fit_tgp(config)?;
                    optimize_acquisition(
                        |x: &[f64]| score(model.predict(x).moments()),
                        kind.direction(),
                        dim,
                        &budget,
                        seed,
                    )
                }
            }
        };
        let phase = self.phase;
        self.evaluate_and_record(config, objective, unit_x, phase, Some(value))?;
        self.t += 1;
        Ok(())
    }

    pub fn into_trace(self, config: &BoConfig) -> RunTrace {
        let stop = if self.optimum_reached(config) {
            StopReason::OptimumReached
        } else {
            StopReason::Budget
        };
        RunTrace {
            seed: config.seed,
            method: config.method,
            f_star_declared: config.f_star_declared,
            f_star_reference: config.regret_reference(),
            records: self.records,
            stats: self.stats,
            stop,
        }
    }
}

/// Executes one seeded run.
pub fn run(config: &BoConfig, objective: &dyn Objective) -> Result<RunTrace, BoError> {
    let mut state = RunState::initialize(config, objective)?;
    while !state.is_finished(config) {
        state.step(config, objective)?;
    }
    let trace = state.into_trace(config);
    debug_assert!(trace_is_consistent(&trace));
    Ok(trace)
}

/// Best-so-far and regret columns re-derive exactly from the outputs, and
/// no informed record precedes the first successful reach check.
pub fn trace_is_consistent(trace: &RunTrace) -> bool {
    if trace.records.is_empty() {
        return true;
    }
    let regret = simple_regret(&trace.ys(), trace.f_star_reference);
    let columns_ok = trace
        .records
        .iter()
        .zip(&regret)
        .all(|(r, &expected)| r.regret == expected);
    let monotone = trace
        .records
        .windows(2)
        .all(|w| w[1].regret <= w[0].regret && w[1].best >= w[0].best);
    let phases_ok = match trace.stats.first_informed_iter {
        Some(first) => trace
            .records
            .iter()
            .all(|r| r.phase != Phase::Informed || r.iter >= first),
        None => true,
    };
    let never_reverts = trace
        .records
        .windows(2)
        .all(|w| !(w[0].phase == Phase::Informed && w[1].phase == Phase::Warmstart));
    columns_ok && monotone && phases_ok && never_reverts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg_1d(f_star: f64, method: &str) -> BoConfig {
        let mut c = BoConfig::new(Domain::unit(1), f_star, method.parse().unwrap());
        c.max_iters = 5;
        c.n_init = 3;
        c
    }

    #[test]
    fn method_spec_round_trip() {
        for m in MethodSpec::all() {
            assert_eq!(m.to_string().parse::<MethodSpec>().unwrap(), m);
        }
        let err = "bogus".parse::<MethodSpec>().unwrap_err();
        assert!(err.contains("erm-tgp") && err.contains("ei-gp"));
        assert!("erm-xyz".parse::<MethodSpec>().is_err());
    }

    #[test]
    fn lhs_strata_1d() {
        let pts = initial_design(&Domain::unit(1), 4, 3);
        let mut strata: Vec<usize> = pts.iter().map(|p| (p[0] * 4.0).floor() as usize).collect();
        strata.sort();
        assert_eq!(strata, vec![0, 1, 2, 3]);
    }

    #[test]
    fn lhs_strata_2d_and_determinism() {
        let d = Domain::new(vec![(-5.0, 10.0), (0.0, 15.0)]).unwrap();
        let a = initial_design(&d, 8, 17);
        assert_eq!(a, initial_design(&d, 8, 17));
        for j in 0..2 {
            let mut s: Vec<usize> = a
                .iter()
                .map(|p| (d.to_unit(p)[j] * 8.0).floor() as usize)
                .collect();
            s.sort();
            assert_eq!(s, (0..8).collect::<Vec<_>>());
        }
    }

    #[test]
    fn reach_check_dominance_and_bounds() {
        let gp = GpModel::fit(
            &[vec![0.2], vec![0.8]],
            &[-1.0, 1.0],
            KernelParams::new(0.1, 1e-6, 0.0).unwrap(),
        )
        .unwrap();
        let b = SearchBudget::for_dim(1);
        assert!(reach_check(&gp, 1.0, 1e-6, &b, 0));
        assert!(reach_check(&gp, 50.0, 1e6, &b, 0));
        let single = GpModel::fit(
            &[vec![0.5]],
            &[0.0],
            KernelParams::new(0.1, 1e-6, 0.0).unwrap(),
        )
        .unwrap();
        assert!(!reach_check(&single, 10.0, 1.0, &b, 0));
    }

    #[test]
    fn zero_iterations_gives_design_only() {
        let mut c = cfg_1d(0.0, "erm-tgp");
        c.max_iters = 0;
        let obj = |x: &[f64]| -(x[0] - 0.6).powi(2);
        let trace = run(&c, &obj).unwrap();
        assert_eq!(trace.records.len(), 3);
        assert!(trace.records.iter().all(|r| r.phase == Phase::Init));
    }

    #[test]
    fn constant_optimum_stops_after_initial_design() {
        let c = cfg_1d(2.0, "erm-tgp");
        let trace = run(&c, &|_: &[f64]| 2.0).unwrap();
        assert_eq!(trace.records.len(), c.n_init);
        assert_eq!(trace.stop, StopReason::OptimumReached);
        assert_eq!(trace.stats.reach_checks, 0);
    }

    #[test]
    fn stops_once_optimum_observed_in_loop() {
        // optimum plateau covering the right half: the first informed step
        // lands on it almost surely and the loop exits right after.
        let mut c = cfg_1d(0.0, "erm-tgp");
        c.max_iters = 30;
        c.n_init = 2;
        let obj = |x: &[f64]| if x[0] >= 0.25 { 0.0 } else { -1.0 - x[0] };
        let trace = run(&c, &obj).unwrap();
        assert_eq!(trace.stop, StopReason::OptimumReached);
        assert_eq!(trace.records.last().unwrap().y, 0.0);
        assert!(trace.records.len() < 2 + 30);
        // nothing is evaluated past the first optimal point except the rest
        // of the initial design
        let first = trace.records.iter().position(|r| r.y == 0.0).unwrap();
        assert!(trace.records[first + 1..]
            .iter()
            .all(|r| r.phase == Phase::Init));
    }

    #[test]
    fn same_seed_same_trace() {
        let c = cfg_1d(0.0, "erm-tgp");
        let obj = |x: &[f64]| -(x[0] - 0.6).powi(2);
        assert_eq!(run(&c, &obj).unwrap(), run(&c, &obj).unwrap());
    }

    #[test]
    fn standard_bo_computes_no_g_values() {
        let c = cfg_1d(0.0, "ei-gp");
        let obj = |x: &[f64]| -(x[0] - 0.6).powi(2);
        let trace = run(&c, &obj).unwrap();
        assert_eq!(trace.stats.g_transforms, 0);
        assert_eq!(trace.stats.reach_checks, 0);
        assert!(!c.warm_start);
    }

    #[test]
    fn informed_runs_transform_outputs() {
        let c = cfg_1d(0.0, "erm-tgp");
        let obj = |x: &[f64]| -(x[0] - 0.6).powi(2);
        let trace = run(&c, &obj).unwrap();
        assert!(trace.stats.reach_checks >= 1);
        assert!(trace.stats.g_transforms > 0);
        assert!(trace_is_consistent(&trace));
    }

    #[test]
    fn objective_failure_carries_context() {
        struct Failing;
        impl Objective for Failing {
            fn evaluate(&self, _: &[f64]) -> Result<f64, ObjectiveError> {
                Err(ObjectiveError("boom".into()))
            }
        }
        let err = run(&cfg_1d(0.0, "erm-tgp"), &Failing).unwrap_err();
        assert!(matches!(err, BoError::Objective { iter: 1, .. }));
        assert!(err.to_string().contains("boom"));
        let nan = run(&cfg_1d(0.0, "erm-tgp"), &|_: &[f64]| f64::NAN).unwrap_err();
        assert!(matches!(nan, BoError::NonFinite { .. }));
    }

    #[test]
    fn invalid_config_rejected() {
        let mut c = cfg_1d(0.0, "erm-tgp");
        c.n_init = 1;
        assert!(matches!(run(&c, &|_: &[f64]| 0.0), Err(BoError::Config(_))));
        let mut c = cfg_1d(0.0, "erm-tgp");
        c.delta = 1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn records_stay_inside_domain() {
        let d = Domain::new(vec![(-5.0, 10.0), (0.0, 15.0)]).unwrap();
        let mut c = BoConfig::new(d.clone(), -0.397887, "cbm-tgp".parse().unwrap());
        c.max_iters = 4;
        let trace = run(&c, &crate::benchmarks::branin()).unwrap();
        assert!(trace.records.iter().all(|r| d.contains(&r.x)));
    }

    #[test]
    fn every_method_runs() {
        for m in MethodSpec::all() {
            let mut c = BoConfig::new(Domain::unit(2), 0.0, m);
            c.max_iters = 3;
            c.search = Some(SearchBudget {
                n_samples: 64,
                ..SearchBudget::for_dim(2)
            });
            let obj = |x: &[f64]| -((x[0] - 0.3).powi(2) + (x[1] - 0.7).powi(2));
            let trace = run(&c, &obj).unwrap_or_else(|e| panic!("{m}: {e}"));
            assert!(trace_is_consistent(&trace), "{m}");
        }
    }
}
