//! Deterministic multi-start optimizer over the unit hypercube: uniform
//! random sampling followed by compass-pattern refinement of the best few
//! samples.

use crate::acquisition::Direction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub n_samples: usize,
    pub n_refine: usize,
    pub initial_step: f64,
    pub min_step: f64,
    /// Per-refinement evaluation cap, as a multiple of the dimension.
    pub max_evals_per_dim: usize,
}

impl SearchBudget {
    /// `200·d` samples, 5 refinements.
    pub fn for_dim(dim: usize) -> Self {
        Self {
            n_samples: 200 * dim.max(1),
            n_refine: 5,
            initial_step: 0.05,
            min_step: 1e-4,
            max_evals_per_dim: 400,
        }
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    point: Vec<f64>,
    value: f64,
    score: f64,
}

/// Best-first: higher score, then lexicographically smaller point.
fn rank(a: &Candidate, b: &Candidate) -> Ordering {
    b.score.total_cmp(&a.score).then_with(|| {
        a.point
            .iter()
            .zip(&b.point)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn refine<F: Fn(&[f64]) -> f64>(
    evaluate: &F,
    direction: Direction,
    start: &Candidate,
    budget: &SearchBudget,
) -> Candidate {
    let dim = start.point.len();
    let max_evals = budget.max_evals_per_dim * dim.max(1);
    let mut best = start.clone();
    let mut step = budget.initial_step;
    let mut evals = 0;
    while step >= budget.min_step && evals < max_evals {
        let mut improved = false;
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let mut p = best.point.clone();
                p[i] = (p[i] + sign * step).clamp(0.0, 1.0);
                if p[i] == best.point[i] {
                    continue;
                }
                let value = evaluate(&p);
                evals += 1;
                let score = direction.score(value);
                if score > best.score {
                    best = Candidate {
                        point: p,
                        value,
                        score,
                    };
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Searches `[0,1]^dim` for the best value of `evaluate` under `direction`.
/// The result never ranks below the best raw sample and is bit-identical
/// for a given seed. `extra` points are scored alongside the random samples.
pub fn optimize_acquisition_with<F: Fn(&[f64]) -> f64>(
    evaluate: F,
    direction: Direction,
    dim: usize,
    budget: &SearchBudget,
    seed: u64,
    extra: &[Vec<f64>],
) -> (Vec<f64>, f64) {
    assert!(
        dim >= 1 && budget.n_samples >= 1,
        "optimize_acquisition: empty search"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<Candidate> = (0..budget.n_samples)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect::<Vec<_>>())
        .chain(extra.iter().cloned())
        .map(|point| {
            let value = evaluate(&point);
            Candidate {
                score: direction.score(value),
                point,
                value,
            }
        })
        .collect();
    candidates.sort_by(rank);
    candidates.dedup_by(|a, b| a.point == b.point);

    let mut best = candidates[0].clone();
    for start in candidates.iter().take(budget.n_refine) {
        let refined = refine(&evaluate, direction, start, budget);
        if rank(&refined, &best) == Ordering::Less {
            best = refined;
        }
    }
    (best.point, best.value)
}

pub fn optimize_acquisition<F: Fn(&[f64]) -> f64>(
    evaluate: F,
    direction: Direction,
    dim: usize,
    budget: &SearchBudget,
    seed: u64,
) -> (Vec<f64>, f64) {
    optimize_acquisition_with(evaluate, direction, dim, budget, seed, &[])
}
