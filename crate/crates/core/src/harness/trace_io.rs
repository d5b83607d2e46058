//! CSV trace files: `run,seed,iter,phase,x0..x{d-1},y,best,regret`, floats
//! written with 17 significant digits.

use super::HarnessError;
use crate::bo::{Phase, RunTrace};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub run: usize,
    pub seed: u64,
    pub iter: usize,
    pub phase: Phase,
    pub x: Vec<f64>,
    pub y: f64,
    pub best: f64,
    pub regret: f64,
}

pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn header(dim: usize) -> Vec<String> {
    let mut h: Vec<String> = ["run", "seed", "iter", "phase"].map(String::from).to_vec();
    h.extend((0..dim).map(|i| format!("x{i}")));
    h.extend(["y", "best", "regret"].map(String::from));
    h
}

/// Writes `(run index, trace)` pairs in the given order.
pub fn write_trace_file(
    path: &Path,
    dim: usize,
    runs: &[(usize, &RunTrace)],
) -> Result<(), HarnessError> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(header(dim))?;
    for (run, trace) in runs {
        for r in &trace.records {
            let mut row = vec![
                run.to_string(),
                trace.seed.to_string(),
                r.iter.to_string(),
                r.phase.to_string(),
            ];
            row.extend(r.x.iter().map(|&v| fmt_float(v)));
            row.extend([r.y, r.best, r.regret].map(fmt_float));
            w.write_record(&row)?;
        }
    }
    w.flush().map_err(|e| HarnessError::io(path, e))?;
    Ok(())
}

pub fn read_trace_file(path: &Path) -> Result<Vec<TraceRow>, HarnessError> {
    let mut r = csv::Reader::from_path(path)?;
    let headers = r.headers()?.clone();
    let n = headers.len();
    if n < 7 || &headers[0] != "run" || &headers[n - 1] != "regret" {
        return Err(HarnessError::Parse(format!(
            "{}: unexpected header",
            path.display()
        )));
    }
    let dim = n - 7;
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let bad = |what: &str| {
            HarnessError::Parse(format!(
                "{}: record {}: bad {what}",
                path.display(),
                line + 1
            ))
        };
        let float = |i: usize| rec[i].parse::<f64>().map_err(|_| bad(&headers[i]));
        rows.push(TraceRow {
            run: rec[0].parse().map_err(|_| bad("run"))?,
            seed: rec[1].parse().map_err(|_| bad("seed"))?,
            iter: rec[2].parse().map_err(|_| bad("iter"))?,
            phase: rec[3].parse().map_err(|_| bad("phase"))?,
            x: (4..4 + dim).map(float).collect::<Result<_, _>>()?,
            y: float(4 + dim)?,
            best: float(5 + dim)?,
            regret: float(6 + dim)?,
        });
    }
    Ok(rows)
}

pub fn write_lines(path: &Path, lines: &[String]) -> Result<(), HarnessError> {
    let mut f = BufWriter::new(File::create(path).map_err(|e| HarnessError::io(path, e))?);
    for l in lines {
        writeln!(f, "{l}").map_err(|e| HarnessError::io(path, e))?;
    }
    f.flush().map_err(|e| HarnessError::io(path, e))
}
