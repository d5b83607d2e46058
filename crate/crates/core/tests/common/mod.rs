//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use kobo::data::{Domain, ObservationSet};
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Composite Simpson rule with `n` (rounded up to even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

fn phi(u: f64) -> f64 {
    (-0.5 * u * u).exp() / (2.0 * PI).sqrt()
}

/// Integration cutoff in standard-normal units.
const TAIL: f64 = 40.0;
const PANELS: usize = 40_000;

/// `E[max(0, f* − f)]`, `f ~ N(μ, σ²)`, by quadrature in `u = (f − μ)/σ`.
pub fn expected_regret_quadrature(mu: f64, sigma: f64, f_star: f64) -> f64 {
    let z = (f_star - mu) / sigma;
    if z <= -TAIL {
        return 0.0;
    }
    sigma * simpson(|u| (z - u) * phi(u), -TAIL, z.min(TAIL), PANELS)
}

/// `E[max(0, f − f*)]` by quadrature.
pub fn expected_excess_quadrature(mu: f64, sigma: f64, f_star: f64) -> f64 {
    let z = (f_star - mu) / sigma;
    if z >= TAIL {
        return 0.0;
    }
    sigma * simpson(|u| (u - z) * phi(u), z.max(-TAIL), TAIL, PANELS)
}

/// `H[N(μ,σ²)] − H[N(μ,σ²) truncated to f ≤ f*]`, both entropies by
/// quadrature. The truncated density is written in `s = γ − u ≥ 0`,
/// `γ = (f* − μ)/σ`, where it is proportional to `exp(−s²/2 + γs)`; σ cancels.
pub fn truncated_entropy_gap_quadrature(mu: f64, sigma: f64, f_star: f64) -> f64 {
    let gamma = (f_star - mu) / sigma;
    let shift = if gamma > 0.0 {
        0.5 * gamma * gamma
    } else {
        0.0
    };
    let log_w = |s: f64| -0.5 * s * s + gamma * s - shift;
    let upper = if gamma < -1.0 {
        60.0 / -gamma
    } else {
        gamma.max(0.0) + TAIL
    };
    let z = simpson(|s| log_w(s).exp(), 0.0, upper, PANELS);
    let mean_log_w = simpson(|s| log_w(s).exp() * log_w(s), 0.0, upper, PANELS) / z;
    // entropy of truncated density q = w/Z is −E_q[ln w] + ln Z
    let h_trunc = -mean_log_w + z.ln();
    let h_full = 0.5 * (2.0 * PI * std::f64::consts::E).ln();
    // both in u units
    h_full - h_trunc
}

/// Dense log marginal likelihood via an LU solve and determinant.
pub fn dense_lml(inputs: &[Vec<f64>], y: &[f64], lengthscale: f64, jitter: f64, mean: f64) -> f64 {
    let n = inputs.len();
    let k = DMatrix::from_fn(n, n, |i, j| {
        let d2: f64 = inputs[i]
            .iter()
            .zip(&inputs[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        (-d2 / lengthscale).exp() + if i == j { jitter } else { 0.0 }
    });
    let r = nalgebra::DVector::from_iterator(n, y.iter().map(|v| v - mean));
    let lu = k.clone().lu();
    let mut alpha = lu.solve(&r).expect("invertible Gram matrix");
    // one step of iterative refinement
    let residual = &r - &k * &alpha;
    alpha += lu.solve(&residual).unwrap();
    let quad = r.dot(&alpha);
    -0.5 * quad - 0.5 * lu.determinant().ln() - 0.5 * n as f64 * (2.0 * PI).ln()
}

pub fn random_unit_points<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect()
}

/// Random data set on the unit cube with a smooth response.
pub fn random_observations<R: Rng>(rng: &mut R, n: usize, dim: usize) -> ObservationSet {
    let inputs = random_unit_points(rng, n, dim);
    let a: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.5..4.0)).collect();
    let ys = inputs
        .iter()
        .map(|x| {
            x.iter()
                .zip(&a)
                .map(|(xi, ai)| (ai * xi).sin())
                .sum::<f64>()
        })
        .collect();
    ObservationSet::from_unit(Domain::unit(dim), inputs, ys).unwrap()
}
