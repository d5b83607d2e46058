//! Observation storage: unit-cube inputs, raw and standardized outputs.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {index} = {value} lies outside [0, 1]")]
    OutsideUnitCube { index: usize, value: f64 },
    #[error("invalid bounds for dimension {index}: [{lo}, {hi}]")]
    InvalidBounds { index: usize, lo: f64, hi: f64 },
    #[error("non-finite output value {0}")]
    NonFinite(f64),
}

/// Axis-aligned box in original units.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    bounds: Vec<(f64, f64)>,
}

impl Domain {
    pub fn new(bounds: Vec<(f64, f64)>) -> Result<Self, DataError> {
        for (index, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(DataError::InvalidBounds { index, lo, hi });
            }
        }
        if bounds.is_empty() {
            return Err(DataError::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self { bounds })
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            bounds: vec![(0.0, 1.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Maps a unit-cube point to original units.
    pub fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .zip(&self.bounds)
            .map(|(&v, &(lo, hi))| (lo + v * (hi - lo)).clamp(lo, hi))
            .collect()
    }

    pub fn to_unit(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.bounds)
            .map(|(&v, &(lo, hi))| (v - lo) / (hi - lo))
            .collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(&self.bounds)
                .all(|(&v, &(lo, hi))| v >= lo && v <= hi)
    }
}

/// Affine map of raw outputs to zero mean and unit population std.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standardizer {
    pub mean: f64,
    pub scale: f64,
}

impl Default for Standardizer {
    fn default() -> Self {
        Self {
            mean: 0.0,
            scale: 1.0,
        }
    }
}

impl Standardizer {
    /// A single observation or constant outputs fall back to `scale = 1`,
    /// which turns standardization into centering.
    pub fn fit(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self::default();
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let scale = var.sqrt();
        if values.len() < 2 || scale.is_nan() || scale <= 0.0 || !scale.is_finite() {
            Self { mean, scale: 1.0 }
        } else {
            Self { mean, scale }
        }
    }

    pub fn standardize(&self, raw: f64) -> f64 {
        (raw - self.mean) / self.scale
    }

    pub fn to_original_units(&self, value: f64) -> f64 {
        value * self.scale + self.mean
    }
}

/// Paired observations. Inputs are stored in unit-cube coordinates; the
/// standardized outputs are recomputed from the full set on every insert.
#[derive(Debug, Clone)]
pub struct ObservationSet {
    domain: Domain,
    inputs: Vec<Vec<f64>>,
    y_raw: Vec<f64>,
    y_std: Vec<f64>,
    standardizer: Standardizer,
}

impl ObservationSet {
    pub fn new(domain: Domain) -> Self {
        Self {
            domain,
            inputs: Vec::new(),
            y_raw: Vec::new(),
            y_std: Vec::new(),
            standardizer: Standardizer::default(),
        }
    }

    /// Builds a set from unit-cube inputs and raw outputs.
    pub fn from_unit(
        domain: Domain,
        inputs: Vec<Vec<f64>>,
        y_raw: Vec<f64>,
    ) -> Result<Self, DataError> {
        if inputs.len() != y_raw.len() {
            return Err(DataError::DimensionMismatch {
                expected: inputs.len(),
                got: y_raw.len(),
            });
        }
        let mut set = Self::new(domain);
        for (x, y) in inputs.into_iter().zip(y_raw) {
            set.check(&x, y)?;
            set.inputs.push(x);
            set.y_raw.push(y);
        }
        set.standardize();
        Ok(set)
    }

    fn check(&self, x: &[f64], y: f64) -> Result<(), DataError> {
        if x.len() != self.domain.dim() {
            return Err(DataError::DimensionMismatch {
                expected: self.domain.dim(),
                got: x.len(),
            });
        }
        if let Some((index, &value)) = x
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v >= 0.0 && **v <= 1.0))
        {
            return Err(DataError::OutsideUnitCube { index, value });
        }
        if !y.is_finite() {
            return Err(DataError::NonFinite(y));
        }
        Ok(())
    }

    pub fn push(&mut self, unit_x: Vec<f64>, y_raw: f64) -> Result<(), DataError> {
        self.check(&unit_x, y_raw)?;
        self.inputs.push(unit_x);
        self.y_raw.push(y_raw);
        self.standardize();
        Ok(())
    }

    /// Refits the standardizer on all raw outputs and rewrites `y_std`.
    pub fn standardize(&mut self) {
        self.standardizer = Standardizer::fit(&self.y_raw);
        let s = self.standardizer;
        self.y_std = self.y_raw.iter().map(|&y| s.standardize(y)).collect();
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn y_raw(&self) -> &[f64] {
        &self.y_raw
    }

    pub fn y_std(&self) -> &[f64] {
        &self.y_std
    }

    pub fn standardizer(&self) -> Standardizer {
        self.standardizer
    }

    pub fn max_raw(&self) -> Option<f64> {
        self.y_raw.iter().copied().reduce(f64::max)
    }

    pub fn max_std(&self) -> Option<f64> {
        self.y_std.iter().copied().reduce(f64::max)
    }
}
