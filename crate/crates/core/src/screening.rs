//! Forbidden-subgraph screening by sweeping `p`.
//!
//! For unit-weight graphs, `G' ⊆ G` forces `λ_max^{(p)}(G') ≤ λ_max^{(p)}(G)`
//! for every `p > 1`, where `λ_max^{(p)}` is the largest eigenvalue of the
//! signless p-Laplacian. A single `p` with the reverse strict inequality
//! therefore proves `G'` is not a subgraph of `G`. The converse never holds:
//! the screen can only rule containment out.

use std::io::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::fmt_f64;
use crate::graph::SignedGraph;
use crate::linear::{linear_baselines, LinearBaselines};
use crate::operator::{OperatorError, PParam};
use crate::power::{solve_max, SolveError, SolverConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriterionError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("bad p grid: {0}")]
    BadGrid(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningConfig {
    /// Relative bracket gap for each eigenvalue solve.
    pub eps: f64,
    pub max_iter: usize,
    /// Margin by which `λ(G')` must exceed `λ(G)` to count as a witness.
    pub tol_strict: f64,
}

impl Default for ScreeningConfig {
    fn default() -> Self {
        ScreeningConfig { eps: 1e-12, max_iter: 1_000_000, tol_strict: 1e-9 }
    }
}

/// `λ_max^{(p)}` of the star `K_{1,d}`: `(1 + d^{1/(p−1)})^{p−1}`.
pub fn star_lambda(d: usize, p: PParam) -> f64 {
    let q = p.get() - 1.0;
    (1.0 + (d as f64).powf(1.0 / q)).powf(q)
}

/// Largest signless p-Laplacian eigenvalue of the graph's topology, with
/// `w ≡ 1`, `μ ≡ 1`, `κ ≡ 0`. Disconnected graphs take the maximum over
/// components; an isolated vertex contributes 0.
pub fn lambda_max_signless(g: &SignedGraph, p: PParam) -> Result<f64, CriterionError> {
    lambda_max_signless_with(g, p, &ScreeningConfig::default())
}

pub fn lambda_max_signless_with(g: &SignedGraph, p: PParam, cfg: &ScreeningConfig) -> Result<f64, CriterionError> {
    if g.n() == 0 {
        return Err(CriterionError::EmptyGraph);
    }
    let plain = g.to_plain();
    let solver = SolverConfig::default().with_eps(cfg.eps).with_max_iter(cfg.max_iter);
    let mut best = 0.0f64;
    for comp in plain.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = plain.induced(&comp);
        best = best.max(solve_max(&sub, p, &solver)?.pair.lambda);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotSubgraph,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub p_grid: Vec<f64>,
    /// `λ_max^{(p)}(G)` per grid point.
    pub lambda_g: Vec<f64>,
    /// `λ_max^{(p)}(G')` per grid point.
    pub lambda_gp: Vec<f64>,
    /// Grid points where `λ(G') > λ(G) + tol_strict`.
    pub witnesses: Vec<f64>,
    pub verdict: Verdict,
    pub baselines_g: LinearBaselines,
    pub baselines_gp: LinearBaselines,
}

impl CriterionReport {
    /// CSV rows `p,lambda_G,lambda_Gprime,witness` followed by a `#` comment
    /// block with the linear baselines and the verdict.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "p,lambda_G,lambda_Gprime,witness")?;
        for (k, &p) in self.p_grid.iter().enumerate() {
            let witness = self.witnesses.contains(&p);
            writeln!(
                out,
                "{},{},{},{}",
                fmt_f64(p),
                fmt_f64(self.lambda_g[k]),
                fmt_f64(self.lambda_gp[k]),
                u8::from(witness)
            )?;
        }
        let (b, bp) = (&self.baselines_g, &self.baselines_gp);
        writeln!(out, "# baseline,lambda_G,lambda_Gprime")?;
        writeln!(out, "# adjacency,{},{}", fmt_f64(b.adjacency), fmt_f64(bp.adjacency))?;
        writeln!(out, "# laplacian,{},{}", fmt_f64(b.laplacian), fmt_f64(bp.laplacian))?;
        writeln!(out, "# signless_laplacian,{},{}", fmt_f64(b.signless), fmt_f64(bp.signless))?;
        let verdict = match self.verdict {
            Verdict::NotSubgraph => "not_subgraph",
            Verdict::Inconclusive => "inconclusive",
        };
        writeln!(out, "# verdict,{verdict}")?;
        Ok(())
    }
}

/// Screens whether `gp` can be a subgraph of `g` over `p_grid`.
pub fn criterion_sweep(g: &SignedGraph, gp: &SignedGraph, p_grid: &[f64]) -> Result<CriterionReport, CriterionError> {
    criterion_sweep_with(g, gp, p_grid, &ScreeningConfig::default())
}

pub fn criterion_sweep_with(
    g: &SignedGraph,
    gp: &SignedGraph,
    p_grid: &[f64],
    cfg: &ScreeningConfig,
) -> Result<CriterionReport, CriterionError> {
    if g.n() == 0 || gp.n() == 0 {
        return Err(CriterionError::EmptyGraph);
    }
    let mut grid = p_grid.iter().map(|&p| PParam::new(p)).collect::<Result<Vec<_>, _>>()?;
    grid.sort_by(|a, b| a.get().total_cmp(&b.get()));
    grid.dedup();
    let values = grid
        .par_iter()
        .map(|&p| Ok((lambda_max_signless_with(g, p, cfg)?, lambda_max_signless_with(gp, p, cfg)?)))
        .collect::<Result<Vec<(f64, f64)>, CriterionError>>()?;
    let (lambda_g, lambda_gp): (Vec<f64>, Vec<f64>) = values.into_iter().unzip();
    let p_grid: Vec<f64> = grid.iter().map(|p| p.get()).collect();
    let witnesses: Vec<f64> = p_grid
        .iter()
        .zip(lambda_g.iter().zip(&lambda_gp))
        .filter(|(_, (l, lp))| **lp > **l + cfg.tol_strict)
        .map(|(&p, _)| p)
        .collect();
    let verdict = if witnesses.is_empty() { Verdict::Inconclusive } else { Verdict::NotSubgraph };
    Ok(CriterionReport {
        p_grid,
        lambda_g,
        lambda_gp,
        witnesses,
        verdict,
        baselines_g: linear_baselines(&g.to_plain()),
        baselines_gp: linear_baselines(&gp.to_plain()),
    })
}

/// `(p, λ_max^{(p)}, λ_max^{(p)} / 2^p)` over the grid, in grid order.
pub fn scaled_curve(g: &SignedGraph, p_grid: &[f64]) -> Result<Vec<(f64, f64, f64)>, CriterionError> {
    p_grid
        .par_iter()
        .map(|&p| {
            let lambda = lambda_max_signless(g, PParam::new(p)?)?;
            Ok((p, lambda, lambda / 2f64.powf(p)))
        })
        .collect()
}

/// Parses `start:stop:step` (both ends inclusive when the step divides the
/// range) or a comma-separated list of values.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CriterionError> {
    let bad = |msg: &str| CriterionError::BadGrid(format!("{msg}: '{text}'"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, h] => {
            let (a, b, h) = (num(a)?, num(b)?, num(h)?);
            if !(h > 0.0 && h.is_finite() && a <= b) {
                return Err(bad("need start <= stop and a positive step"));
            }
            let count = ((b - a) / h + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(bad("too many grid points"));
            }
            (0..count).map(|k| a + k as f64 * h).collect()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(bad("expected start:stop:step or a comma list")),
    };
    if grid.is_empty() || grid.iter().any(|&p| !(p > 1.0 && p.is_finite())) {
        return Err(bad("grid values must be finite and > 1"));
    }
    Ok(grid)
}

/// The default sweep `1.05:5:0.05`.
pub fn default_grid() -> Vec<f64> {
    parse_grid("1.05:5:0.05").expect("valid default grid")
}
