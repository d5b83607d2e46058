//! Standard normal density and distribution function.

use libm::erfc;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// φ(z) = exp(−z²/2)/√(2π).
pub fn std_normal_pdf(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Φ(z), evaluated through the complementary error function so both tails
/// keep full relative precision.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Below this, Φ is computed relative to φ through the Mills ratio.
const LOWER_TAIL: f64 = -5.0;

/// Mills ratio `Φ(−x)/φ(x)` for `x ≥ 5`, by backward evaluation of its
/// continued fraction `1/(x + 1/(x + 2/(x + 3/(x + …))))`.
fn mills_ratio(x: f64) -> f64 {
    let mut tail = x;
    for k in (1..=200).rev() {
        tail = x + k as f64 / tail;
    }
    1.0 / tail
}

/// ln Φ(z), accurate in the lower tail where Φ underflows.
pub fn std_normal_log_cdf(z: f64) -> f64 {
    if z < LOWER_TAIL {
        -0.5 * z * z - 0.5 * (2.0 * PI).ln() + mills_ratio(-z).ln()
    } else {
        std_normal_cdf(z).ln()
    }
}

/// φ(z)/Φ(z) without underflow for large negative `z`.
pub fn pdf_over_cdf(z: f64) -> f64 {
    if z < LOWER_TAIL {
        1.0 / mills_ratio(-z)
    } else {
        std_normal_pdf(z) / std_normal_cdf(z)
    }
}
