//! Bayesian optimization for black-box functions whose optimum value `f*`
//! is known in advance while its location is not.
//!
//! The crate provides an exact GP ([`gp`]), a transformed GP that keeps its
//! predictive mean below `f*` ([`tgp`]), closed-form acquisitions including
//! confidence bound minimization and expected regret minimization
//! ([`acquisition`]), the optimization loop ([`bo`]), analytic benchmark
//! problems ([`benchmarks`]) and an experiment harness ([`harness`]).

pub mod acquisition;
pub mod benchmarks;
pub mod bo;
pub mod data;
pub mod gp;
pub mod harness;
pub mod normal;
pub mod optimize;
pub mod tgp;

pub use acquisition::{AcquisitionContext, AcquisitionKind, Direction};
pub use bo::{run, BoConfig, BoError, MethodSpec, Objective, Phase, RunTrace, Surrogate};
pub use data::{Domain, ObservationSet, Standardizer};
pub use gp::{GpModel, KernelParams, PredictiveMoments};
pub use tgp::{M0Mode, TgpModel, TgpPosterior};
