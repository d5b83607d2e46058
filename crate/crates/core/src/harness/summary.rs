//! Per-cell regret statistics aggregated from trace files.

use super::trace_io::{fmt_float, read_trace_file, TraceRow};
use super::HarnessError;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

pub const SUMMARY_FILE: &str = "summary.csv";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegretStats {
    pub runs: usize,
    pub mean: f64,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
}

/// Quantile with linear interpolation between order statistics
/// (position `q·(n−1)` in the sorted sample).
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

impl RegretStats {
    pub fn from_values(values: &[f64]) -> Self {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Self {
            runs: v.len(),
            mean: v.iter().sum::<f64>() / v.len() as f64,
            median: quantile(&v, 0.5),
            q25: quantile(&v, 0.25),
            q75: quantile(&v, 0.75),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub problem: String,
    pub method: String,
    pub fstar_declared: f64,
    /// Index `i` holds statistics after `i + 1` evaluations.
    pub per_iter: Vec<RegretStats>,
    pub last: RegretStats,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub cells: Vec<CellSummary>,
}

impl Summary {
    pub fn cell(&self, method: &str, fstar_declared: f64) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.method == method && c.fstar_declared == fstar_declared)
    }

    pub fn final_median(&self, method: &str, fstar_declared: f64) -> Option<f64> {
        self.cell(method, fstar_declared).map(|c| c.last.median)
    }
}

/// `{problem}__{method}__fstar_{value}.csv`
pub fn cell_file_name(problem: &str, method: &str, fstar: f64) -> String {
    format!("{problem}__{method}__fstar_{fstar}.csv")
}

fn parse_cell_file_name(name: &str) -> Option<(String, String, f64)> {
    let stem = name.strip_suffix(".csv")?;
    let mut parts = stem.split("__");
    let problem = parts.next()?.to_string();
    let method = parts.next()?.to_string();
    let fstar = parts.next()?.strip_prefix("fstar_")?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((problem, method, fstar))
}

/// Regret series per run; runs that stopped early carry their last value
/// forward to the longest run's length.
pub fn summarize_rows(
    problem: &str,
    method: &str,
    fstar_declared: f64,
    rows: &[TraceRow],
) -> Option<CellSummary> {
    let mut by_run: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
    for r in rows {
        by_run.entry(r.run).or_default().push((r.iter, r.regret));
    }
    let series: Vec<Vec<f64>> = by_run
        .into_values()
        .map(|mut v| {
            v.sort_by_key(|&(iter, _)| iter);
            v.into_iter().map(|(_, r)| r).collect::<Vec<_>>()
        })
        .filter(|v| !v.is_empty())
        .collect();
    let len = series.iter().map(Vec::len).max()?;
    let at = |s: &Vec<f64>, i: usize| s[i.min(s.len() - 1)];
    let per_iter = (0..len)
        .map(|i| RegretStats::from_values(&series.iter().map(|s| at(s, i)).collect::<Vec<_>>()))
        .collect();
    let last = RegretStats::from_values(
        &series
            .iter()
            .map(|s| *s.last().unwrap())
            .collect::<Vec<_>>(),
    );
    Some(CellSummary {
        problem: problem.to_string(),
        method: method.to_string(),
        fstar_declared,
        per_iter,
        last,
    })
}

/// Trace files in `dir`, sorted by name so the result does not depend on
/// directory listing order.
pub fn trace_files(dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| HarnessError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| parse_cell_file_name(n).is_some())
        })
        .collect();
    files.sort();
    Ok(files)
}

pub fn summarize_dir(dir: &Path) -> Result<Summary, HarnessError> {
    let mut cells = Vec::new();
    for path in trace_files(dir)? {
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default();
        let (problem, method, fstar) = parse_cell_file_name(name).expect("filtered above");
        let rows = read_trace_file(&path)?;
        if let Some(cell) = summarize_rows(&problem, &method, fstar, &rows) {
            cells.push(cell);
        }
    }
    cells.sort_by(|a, b| {
        (&a.problem, &a.method)
            .cmp(&(&b.problem, &b.method))
            .then(a.fstar_declared.total_cmp(&b.fstar_declared))
    });
    Ok(Summary { cells })
}

pub fn write_summary(path: &Path, summary: &Summary) -> Result<(), HarnessError> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record([
        "problem",
        "method",
        "fstar_declared",
        "iter",
        "runs",
        "mean",
        "median",
        "q25",
        "q75",
    ])?;
    for c in &summary.cells {
        let rows = c
            .per_iter
            .iter()
            .enumerate()
            .map(|(i, s)| ((i + 1).to_string(), s))
            .chain(std::iter::once(("final".to_string(), &c.last)));
        for (iter, s) in rows {
            w.write_record([
                c.problem.clone(),
                c.method.clone(),
                fmt_float(c.fstar_declared),
                iter,
                s.runs.to_string(),
                fmt_float(s.mean),
                fmt_float(s.median),
                fmt_float(s.q25),
                fmt_float(s.q75),
            ])?;
        }
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}
