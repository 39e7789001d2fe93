//! Largest eigenpair of the signless p-Laplacian by nonlinear power
//! iteration.
//!
//! Starting from a strictly positive `f⁰`, each step maps
//! `f ← (Δ_p f)^{1/(p−1)}` and renormalizes. The ratios
//! `(Δ_p f)_i / f_i^{p−1}` give a lower and an upper bound on `λ_max` at
//! every step; on a connected graph both bounds are monotone and meet at
//! `λ_max`. Iteration stops once their relative gap drops below `eps`.

use std::io::{self, Write};

use thiserror::Error;

use crate::fmt_f64;
use crate::graph::SignedGraph;
use crate::operator::{apply_into, phi, shift_potential, OperatorError, PParam};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not signless: edge {{{0}, {1}}} has signature +1")]
    NotSignless(usize, usize),
    #[error("graph needs at least two vertices, got {0}")]
    TooSmall(usize),
    #[error("initial vector must have {expected} strictly positive entries")]
    BadInitial { expected: usize },
    #[error("invalid solver configuration: {0}")]
    BadConfig(String),
    #[error("no convergence after {iters} iterations: lower {lower}, upper {upper}")]
    MaxIterExceeded { iters: usize, lower: f64, upper: f64 },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Norm used to renormalize iterates. The brackets do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `(Σ μ_i f_i²)^{1/2}`
    #[default]
    MuWeighted2,
    /// `(Σ f_i²)^{1/2}`
    Unweighted2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub eps: f64,
    pub max_iter: usize,
    pub f0: Option<Vec<f64>>,
    pub record_trace: bool,
    pub normalization: Normalization,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            eps: 1e-10,
            max_iter: 100_000,
            f0: None,
            record_trace: false,
            normalization: Normalization::MuWeighted2,
        }
    }
}

impl SolverConfig {
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_f0(mut self, f0: Vec<f64>) -> Self {
        self.f0 = Some(f0);
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }
}

/// An approximate eigenpair with its eigen-residual
/// `max_i |(Δ_p f)_i − λ Φ_p(f_i)| / max(1, |λ|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub lambda: f64,
    pub f: Vec<f64>,
    pub residual: f64,
}

/// Bracket `lower ≤ λ_max + c ≤ upper` at one iteration, on the shifted graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
    pub rel_gap: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterationTrace {
    pub steps: Vec<TraceStep>,
    /// Potential shift applied before iterating.
    pub shift: f64,
}

impl IterationTrace {
    /// CSV with header `k,lower,upper,rel_gap`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "k,lower,upper,rel_gap")?;
        for s in &self.steps {
            writeln!(out, "{},{},{},{}", s.k, fmt_f64(s.lower), fmt_f64(s.upper), fmt_f64(s.rel_gap))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub pair: Eigenpair,
    pub trace: IterationTrace,
    /// Number of iterations performed (at least one).
    pub iters: usize,
    /// Final bracket on the shifted graph.
    pub lower: f64,
    pub upper: f64,
}

fn normalize(f: &mut [f64], mu: &[f64], norm: Normalization) {
    let s: f64 = match norm {
        Normalization::MuWeighted2 => f.iter().zip(mu).map(|(x, m)| m * x * x).sum(),
        Normalization::Unweighted2 => f.iter().map(|x| x * x).sum(),
    };
    let s = s.sqrt();
    f.iter_mut().for_each(|x| *x /= s);
}

fn brackets(f: &[f64], g: &[f64], p: f64) -> (f64, f64) {
    f.iter().zip(g).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (&x, &y)| {
        let r = y / x.powf(p - 1.0);
        (lo.min(r), hi.max(r))
    })
}

/// The bare iteration on a graph with nonnegative potential. Each
/// [`step`](Self::step) advances one iterate and reports its bracket.
#[derive(Debug, Clone)]
pub struct PowerIteration<'a> {
    g: &'a SignedGraph,
    p: PParam,
    f: Vec<f64>,
    gk: Vec<f64>,
    k: usize,
    norm: Normalization,
}

impl<'a> PowerIteration<'a> {
    /// `g` must be signless, connected and have `κ ≥ 0`; `f0` strictly
    /// positive. [`solve_max`] checks all of this and shifts the potential.
    pub fn new(g: &'a SignedGraph, p: PParam, f0: Vec<f64>, norm: Normalization) -> Self {
        assert_eq!(f0.len(), g.n());
        let mut gk = vec![0.0; g.n()];
        apply_into(g, p, &f0, &mut gk);
        PowerIteration { g, p, f: f0, gk, k: 0, norm }
    }

    /// Current iterate `f^{(k)}`.
    pub fn iterate(&self) -> &[f64] {
        &self.f
    }

    /// `Δ_p f^{(k)}`.
    pub fn image(&self) -> &[f64] {
        &self.gk
    }

    pub fn step(&mut self) -> TraceStep {
        let root = 1.0 / (self.p.get() - 1.0);
        // Dividing by the max entry first keeps (g)^{1/(p−1)} in range for
        // large p; normalization removes the factor anyway.
        let top = self.gk.iter().fold(0.0f64, |a, &x| a.max(x));
        for (fi, &gi) in self.f.iter_mut().zip(&self.gk) {
            *fi = (gi / top).powf(root);
        }
        normalize(&mut self.f, self.g.mu(), self.norm);
        apply_into(self.g, self.p, &self.f, &mut self.gk);
        self.k += 1;
        let (lower, upper) = brackets(&self.f, &self.gk, self.p.get());
        TraceStep { k: self.k, lower, upper, rel_gap: (upper - lower) / (upper + lower) }
    }

    pub fn into_iterate(self) -> Vec<f64> {
        self.f
    }
}

/// Largest eigenpair of a connected signless graph.
///
/// The returned `lambda` is the bracket midpoint minus the potential shift;
/// `f` is strictly positive and normalized in the configured norm.
pub fn solve_max(g: &SignedGraph, p: PParam, cfg: &SolverConfig) -> Result<Solution, SolveError> {
    let n = g.n();
    if !(cfg.eps > 0.0 && cfg.eps < 1.0) {
        return Err(SolveError::BadConfig(format!("eps must lie in (0, 1), got {}", cfg.eps)));
    }
    if cfg.max_iter == 0 {
        return Err(SolveError::BadConfig("max_iter must be positive".into()));
    }
    if n < 2 {
        return Err(SolveError::TooSmall(n));
    }
    if let Some(e) = g.edges().iter().find(|e| e.sigma != crate::graph::Sign::Minus) {
        return Err(SolveError::NotSignless(e.i + 1, e.j + 1));
    }
    if !g.is_connected() {
        return Err(SolveError::NotConnected);
    }
    let f0 = match &cfg.f0 {
        Some(f0) if f0.len() == n && f0.iter().all(|&x| x > 0.0 && x.is_finite()) => f0.clone(),
        Some(_) => return Err(SolveError::BadInitial { expected: n }),
        None => vec![1.0; n],
    };

    let (h, c) = shift_potential(g);
    let mut trace = IterationTrace { steps: Vec::new(), shift: c };
    let mut it = PowerIteration::new(&h, p, f0, cfg.normalization);
    let mut last = None;
    for _ in 0..cfg.max_iter {
        let step = it.step();
        last = Some(step);
        if cfg.record_trace {
            trace.steps.push(step);
        }
        if step.rel_gap < cfg.eps {
            let lambda = 0.5 * (step.upper + step.lower) - c;
            let f = it.into_iterate();
            let residual = residual(g, p, lambda, &f);
            return Ok(Solution {
                pair: Eigenpair { lambda, f, residual },
                trace,
                iters: step.k,
                lower: step.lower,
                upper: step.upper,
            });
        }
    }
    let last = last.expect("max_iter > 0");
    Err(SolveError::MaxIterExceeded { iters: cfg.max_iter, lower: last.lower, upper: last.upper })
}

fn residual(g: &SignedGraph, p: PParam, lambda: f64, f: &[f64]) -> f64 {
    let mut d = vec![0.0; g.n()];
    apply_into(g, p, f, &mut d);
    let worst = d
        .iter()
        .zip(f)
        .map(|(&di, &fi)| (di - lambda * phi(fi, p)).abs())
        .fold(0.0, f64::max);
    worst / lambda.abs().max(1.0)
}

/// Eigen-residual `max_i |(Δ_p f)_i − λ Φ_p(f_i)| / max(1, |λ|)` for any
/// signature.
pub fn verify_eigenpair(g: &SignedGraph, p: PParam, lambda: f64, f: &[f64]) -> Result<f64, OperatorError> {
    assert_eq!(f.len(), g.n());
    if f.iter().all(|&x| x == 0.0) {
        return Err(OperatorError::ZeroFunction);
    }
    Ok(residual(g, p, lambda, f))
}
