//! Analytic test problems in the maximization convention, each with its
//! known optimum value.

use crate::bo::{Objective, ObjectiveError};
use crate::data::Domain;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchmarkError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("unknown problem `{name}`; registered problems: {}", registered_names().join(", "))]
    Unknown { name: String },
}

#[derive(Debug, Clone)]
pub struct BenchmarkProblem {
    pub name: String,
    pub domain: Domain,
    pub evaluate: fn(&[f64]) -> f64,
    pub f_true_star: f64,
    /// One known maximizer, for diagnostics only.
    pub x_star: Option<Vec<f64>>,
}

impl BenchmarkProblem {
    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        (self.evaluate)(x)
    }
}

impl Objective for BenchmarkProblem {
    fn evaluate(&self, x: &[f64]) -> Result<f64, ObjectiveError> {
        if x.len() != self.dim() {
            return Err(ObjectiveError(format!(
                "{}: expected {} coordinates, got {}",
                self.name,
                self.dim(),
                x.len()
            )));
        }
        Ok((self.evaluate)(x))
    }
}

pub fn branin_min_form(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let b = 5.1 / (4.0 * PI * PI);
    let c = 5.0 / PI;
    let t = 1.0 / (8.0 * PI);
    (x2 - b * x1 * x1 + c * x1 - 6.0).powi(2) + 10.0 * (1.0 - t) * x1.cos() + 10.0
}

fn neg_branin(x: &[f64]) -> f64 {
    -branin_min_form(x)
}

pub fn branin() -> BenchmarkProblem {
    BenchmarkProblem {
        name: "branin".into(),
        domain: Domain::new(vec![(-5.0, 10.0), (0.0, 15.0)]).unwrap(),
        evaluate: neg_branin,
        f_true_star: -0.397_887_357_729_738,
        x_star: Some(vec![PI, 2.275]),
    }
}

const H3_ALPHA: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
const H3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];
const H3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.0381, 0.5743, 0.8828],
];

const H6_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];
const H6_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

fn hartmann_sum<const D: usize>(x: &[f64], a: &[[f64; D]; 4], p: &[[f64; D]; 4]) -> f64 {
    (0..4)
        .map(|i| {
            let inner: f64 = (0..D).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            H3_ALPHA[i] * (-inner).exp()
        })
        .sum()
}

/// Textbook (minimization) Hartmann-3.
pub fn hartmann3_min_form(x: &[f64]) -> f64 {
    -hartmann_sum(x, &H3_A, &H3_P)
}

pub fn hartmann6_min_form(x: &[f64]) -> f64 {
    -hartmann_sum(x, &H6_A, &H6_P)
}

fn neg_hartmann3(x: &[f64]) -> f64 {
    -hartmann3_min_form(x)
}

fn neg_hartmann6(x: &[f64]) -> f64 {
    -hartmann6_min_form(x)
}

pub fn hartmann3() -> BenchmarkProblem {
    BenchmarkProblem {
        name: "hartmann3".into(),
        domain: Domain::unit(3),
        evaluate: neg_hartmann3,
        f_true_star: 3.862_782_147_820_756,
        x_star: Some(vec![0.114_614, 0.555_649, 0.852_547]),
    }
}

pub fn hartmann6() -> BenchmarkProblem {
    BenchmarkProblem {
        name: "hartmann6".into(),
        domain: Domain::unit(6),
        evaluate: neg_hartmann6,
        f_true_star: 3.322_368_011_415_515,
        x_star: Some(vec![
            0.201_69, 0.150_011, 0.476_874, 0.275_332, 0.311_652, 0.657_3,
        ]),
    }
}

pub fn alpine1_min_form(x: &[f64]) -> f64 {
    x.iter().map(|&v| (v * v.sin() + 0.1 * v).abs()).sum()
}

fn neg_alpine1(x: &[f64]) -> f64 {
    -alpine1_min_form(x)
}

pub fn alpine1(d: usize) -> Result<BenchmarkProblem, BenchmarkError> {
    if d == 0 {
        return Err(BenchmarkError::ZeroDimension);
    }
    Ok(BenchmarkProblem {
        name: format!("alpine1-{d}"),
        domain: Domain::new(vec![(-10.0, 10.0); d]).unwrap(),
        evaluate: neg_alpine1,
        f_true_star: 0.0,
        x_star: Some(vec![0.0; d]),
    })
}

/// G-function with every `aᵢ = 0`: `Πᵢ |4xᵢ − 2|`.
pub fn gsobol_min_form(x: &[f64]) -> f64 {
    x.iter().map(|&v| (4.0 * v - 2.0).abs()).product()
}

fn neg_gsobol(x: &[f64]) -> f64 {
    -gsobol_min_form(x)
}

pub fn gsobol(d: usize) -> Result<BenchmarkProblem, BenchmarkError> {
    if d == 0 {
        return Err(BenchmarkError::ZeroDimension);
    }
    Ok(BenchmarkProblem {
        name: format!("gsobol-{d}"),
        domain: Domain::unit(d),
        evaluate: neg_gsobol,
        f_true_star: 0.0,
        x_star: Some(vec![0.5; d]),
    })
}

pub fn registered_names() -> Vec<&'static str> {
    vec![
        "branin",
        "hartmann3",
        "hartmann6",
        "alpine1-5",
        "gsobol-5",
        "gsobol-10",
    ]
}

/// Looks a problem up by name. Besides the registered names, `alpine1-<d>`
/// and `gsobol-<d>` accept any positive dimension.
pub fn lookup(name: &str) -> Result<BenchmarkProblem, BenchmarkError> {
    let unknown = || BenchmarkError::Unknown {
        name: name.to_string(),
    };
    match name {
        "branin" => Ok(branin()),
        "hartmann3" => Ok(hartmann3()),
        "hartmann6" => Ok(hartmann6()),
        _ => {
            let (family, dim) = name.rsplit_once('-').ok_or_else(unknown)?;
            let d: usize = dim.parse().map_err(|_| unknown())?;
            match family {
                "alpine1" => alpine1(d).map_err(|_| unknown()),
                "gsobol" => gsobol(d).map_err(|_| unknown()),
                _ => Err(unknown()),
            }
        }
    }
}

/// `r_t = f* − max_{i≤t} y_i` for every prefix.
///
/// # Panics
/// If `ys` is empty.
pub fn simple_regret(ys: &[f64], f_star: f64) -> Vec<f64> {
    assert!(!ys.is_empty(), "simple_regret: empty observation list");
    ys.iter()
        .scan(f64::NEG_INFINITY, |best, &y| {
            *best = best.max(y);
            Some(f_star - *best)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branin_known_minimizers() {
        let p = branin();
        for x in [[PI, 2.275], [9.42478, 2.475], [-PI, 12.275]] {
            assert!((p.value(&x) - p.f_true_star).abs() < 1e-4, "{x:?}");
        }
        assert!((p.f_true_star - (-0.397887)).abs() < 1e-6);
    }

    #[test]
    fn hartmann_values() {
        let h3 = hartmann3();
        assert!((h3.f_true_star - 3.86).abs() < 5e-3);
        assert!((h3.value(h3.x_star.as_ref().unwrap()) - 3.86278).abs() < 1e-4);
        let h6 = hartmann6();
        assert!((h6.value(h6.x_star.as_ref().unwrap()) - 3.32237).abs() < 1e-4);
    }

    #[test]
    fn alpine_examples() {
        let p = alpine1(5).unwrap();
        assert_eq!(p.value(&[0.0; 5]), 0.0);
        let p1 = alpine1(1).unwrap();
        assert!((p1.value(&[PI]) + 0.1 * PI).abs() < 1e-12);
        assert!(matches!(alpine1(0), Err(BenchmarkError::ZeroDimension)));
    }

    #[test]
    fn gsobol_examples() {
        let p = gsobol(5).unwrap();
        assert_eq!(p.value(&[0.5; 5]), 0.0);
        assert_eq!(p.value(&[0.0; 5]), -32.0);
        assert_eq!(p.value(&[0.5, 0.0, 1.0, 0.0, 0.2]), 0.0);
        assert!(gsobol(0).is_err());
    }

    #[test]
    fn registry_lookup() {
        for name in registered_names() {
            assert_eq!(lookup(name).unwrap().name, name);
        }
        assert_eq!(lookup("gsobol-10").unwrap().dim(), 10);
        assert_eq!(lookup("alpine1-3").unwrap().dim(), 3);
        let err = lookup("rosenbrock").unwrap_err().to_string();
        assert!(err.contains("branin") && err.contains("gsobol-10"));
        assert!(lookup("gsobol-0").is_err());
        assert!(lookup("gsobol-x").is_err());
    }

    #[test]
    fn regret_examples() {
        assert_eq!(simple_regret(&[1.5], 1.5), vec![0.0]);
        assert_eq!(simple_regret(&[-3.0, -1.0, -2.0], 0.0), vec![3.0, 1.0, 1.0]);
    }

    #[test]
    #[should_panic]
    fn regret_of_nothing_panics() {
        simple_regret(&[], 0.0);
    }

    #[test]
    fn objective_checks_dimension() {
        assert!(Objective::evaluate(&branin(), &[0.0]).is_err());
        assert!(Objective::evaluate(&branin(), &[0.0, 1.0]).is_ok());
    }
}
