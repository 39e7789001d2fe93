//! Timing sweep of the power solver over random graphs with a growing edge
//! count.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::fmt_f64;
use crate::generate::{gnm, GenerateError};
use crate::operator::PParam;
use crate::power::{solve_max, SolveError, SolverConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("m = {m}, seed = {seed}: {source}")]
    Solve { m: usize, seed: u64, source: SolveError },
    #[error("bad edge range: {0}")]
    BadRange(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub iters: usize,
    /// Seconds spent inside the solve call.
    pub wall_time: f64,
    pub lambda: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n: usize,
    pub m_start: usize,
    pub m_stop: usize,
    pub steps: usize,
    pub p: PParam,
    pub seed: u64,
    /// Run the solves on the rayon pool; timings then overlap.
    pub concurrent: bool,
    /// Solves per point; the fastest is recorded.
    pub repeats: usize,
    pub solver: SolverConfig,
}

impl SweepConfig {
    /// Edge counts: `steps` points from `m_start` to `m_stop` inclusive.
    pub fn edge_counts(&self) -> Result<Vec<usize>, BenchError> {
        if self.steps == 0 || self.repeats == 0 || self.m_start > self.m_stop {
            return Err(BenchError::BadRange(format!("{}:{}:{}", self.m_start, self.m_stop, self.steps)));
        }
        if self.steps == 1 {
            return Ok(vec![self.m_stop]);
        }
        let span = (self.m_stop - self.m_start) as f64;
        Ok((0..self.steps)
            .map(|k| self.m_start + (span * k as f64 / (self.steps - 1) as f64).round() as usize)
            .collect())
    }
}

fn run_one(cfg: &SweepConfig, k: usize, m: usize) -> Result<BenchRecord, BenchError> {
    let seed = cfg.seed.wrapping_add(k as u64);
    let g = gnm(cfg.n, m, seed)?;
    let mut wall_time = f64::INFINITY;
    let mut sol = None;
    for _ in 0..cfg.repeats {
        let start = Instant::now();
        let s = solve_max(&g, cfg.p, &cfg.solver).map_err(|source| BenchError::Solve { m, seed, source })?;
        wall_time = wall_time.min(start.elapsed().as_secs_f64());
        sol = Some(s);
    }
    let sol = sol.expect("repeats >= 1");
    Ok(BenchRecord { n: cfg.n, m, p: cfg.p.get(), iters: sol.iters, wall_time, lambda: sol.pair.lambda, seed })
}

/// Generates one `G(n, m)` graph per edge count (seed `seed + k` for the
/// `k`-th point) and times the solve on each.
pub fn edge_sweep(cfg: &SweepConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let counts = cfg.edge_counts()?;
    if cfg.concurrent {
        counts.par_iter().enumerate().map(|(k, &m)| run_one(cfg, k, m)).collect()
    } else {
        counts.iter().enumerate().map(|(k, &m)| run_one(cfg, k, m)).collect()
    }
}

/// CSV with header `n,m,p,iters,wall_time,lambda,seed`.
pub fn write_records<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "n,m,p,iters,wall_time,lambda,seed")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            r.m,
            fmt_f64(r.p),
            r.iters,
            fmt_f64(r.wall_time),
            fmt_f64(r.lambda),
            r.seed
        )?;
    }
    Ok(())
}

/// Least-squares line `y = a + b x`; returns `(a, b, r²)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (a, b, r2)
}
