//! Eigenpairs of `Δ_p` for even `p` by damped Newton from many random
//! starts.
//!
//! Each start solves the square system
//!
//! ```text
//! F_i(f, λ) = μ_i (Δ_p f)_i − λ μ_i Φ_p(f_i)      i = 1..n
//! F_{n+1}   = Σ μ_i |f_i|^p − 1
//! ```
//!
//! Converged roots are merged modulo `f ↦ −f`. Nothing certifies that every
//! eigenpair was found; the result only lists what the starts reached.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::SignedGraph;
use crate::operator::{abs_pow, p_norm, phi, rayleigh, PParam};
use crate::power::{verify_eigenpair, Eigenpair};

pub const MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultistartError {
    #[error("p must be an even integer, got {0}")]
    OddP(f64),
    #[error("multistart search is limited to {MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("no start converged ({starts} starts)")]
    NoConvergence { starts: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultistartConfig {
    pub n_starts: usize,
    pub seed: u64,
    pub newton_tol: f64,
    pub dedupe_tol: f64,
    pub max_steps: usize,
    pub max_halvings: u32,
}

impl Default for MultistartConfig {
    fn default() -> Self {
        MultistartConfig {
            n_starts: 2000,
            seed: 1,
            newton_tol: 1e-10,
            dedupe_tol: 1e-6,
            max_steps: 200,
            max_halvings: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenpairList {
    /// Distinct eigenpairs, `λ` descending.
    pub pairs: Vec<Eigenpair>,
    pub starts_used: usize,
    pub converged_count: usize,
}

impl EigenpairList {
    /// Eigenvalues with pairs closer than `tol · max(1, |λ|)` merged.
    pub fn distinct_eigenvalues(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for pair in &self.pairs {
            if !matches!(out.last(), Some(&l) if (l - pair.lambda).abs() <= tol * l.abs().max(1.0)) {
                out.push(pair.lambda);
            }
        }
        out
    }
}

struct System<'a> {
    g: &'a SignedGraph,
    p: PParam,
}

impl System<'_> {
    fn n(&self) -> usize {
        self.g.n()
    }

    fn residual(&self, f: &[f64], lambda: f64) -> DVector<f64> {
        let g = self.g;
        let n = g.n();
        let q = self.p.get();
        let mut out = DVector::zeros(n + 1);
        for i in 0..n {
            out[i] = (g.kappa()[i] - lambda * g.mu()[i]) * phi(f[i], self.p);
        }
        for e in g.edges() {
            let s = e.sigma.value();
            let t = e.w * phi(f[e.i] - s * f[e.j], self.p);
            out[e.i] += t;
            out[e.j] -= s * t;
        }
        out[n] = f.iter().zip(g.mu()).map(|(&x, &m)| m * abs_pow(x, q)).sum::<f64>() - 1.0;
        out
    }

    fn jacobian(&self, f: &[f64], lambda: f64) -> DMatrix<f64> {
        let g = self.g;
        let n = g.n();
        let q = self.p.get();
        let mut jac = DMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            let d = (q - 1.0) * abs_pow(f[i], q - 2.0);
            jac[(i, i)] = (g.kappa()[i] - lambda * g.mu()[i]) * d;
            jac[(i, n)] = -g.mu()[i] * phi(f[i], self.p);
            jac[(n, i)] = q * g.mu()[i] * phi(f[i], self.p);
        }
        for e in g.edges() {
            let s = e.sigma.value();
            let d = e.w * (q - 1.0) * abs_pow(f[e.i] - s * f[e.j], q - 2.0);
            jac[(e.i, e.i)] += d;
            jac[(e.j, e.j)] += d;
            jac[(e.i, e.j)] -= s * d;
            jac[(e.j, e.i)] -= s * d;
        }
        jac
    }
}

fn inf_norm(v: &DVector<f64>) -> f64 {
    v.amax()
}

fn random_start(g: &SignedGraph, p: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    // |X| = Γ(1/p)^{1/p} with a random sign has density ∝ exp(−|x|^p);
    // normalizing gives the cone measure on the p-sphere.
    let gamma = Gamma::new(1.0 / p, 1.0).expect("valid gamma parameters");
    loop {
        let f: Vec<f64> = g
            .mu()
            .iter()
            .map(|&m| {
                let r: f64 = gamma.sample(rng);
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                sign * (r / m).powf(1.0 / p)
            })
            .collect();
        let norm = p_norm(g, &f, p);
        if norm > 0.0 && norm.is_finite() {
            return f.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn newton(sys: &System, mut f: Vec<f64>, mut lambda: f64, cfg: &MultistartConfig) -> Option<(f64, Vec<f64>)> {
    let n = sys.n();
    let mut r = sys.residual(&f, lambda);
    for _ in 0..cfg.max_steps {
        if inf_norm(&r) <= cfg.newton_tol {
            return Some((lambda, f));
        }
        let jac = sys.jacobian(&f, lambda);
        let step = jac.lu().solve(&(-&r))?;
        if !step.iter().all(|x| x.is_finite()) {
            return None;
        }
        let current = r.norm();
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=cfg.max_halvings {
            let trial: Vec<f64> = (0..n).map(|i| f[i] + t * step[i]).collect();
            let trial_lambda = lambda + t * step[n];
            let trial_r = sys.residual(&trial, trial_lambda);
            if trial_r.norm() < current {
                f = trial;
                lambda = trial_lambda;
                r = trial_r;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    (inf_norm(&r) <= cfg.newton_tol).then_some((lambda, f))
}

fn canonical_sign(f: &mut [f64]) {
    // largest-magnitude entry positive; first index wins ties
    let lead = f
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(k, m), (i, &x)| if x.abs() > m { (i, x.abs()) } else { (k, m) })
        .0;
    if f[lead] < 0.0 {
        f.iter_mut().for_each(|x| *x = -*x);
    }
}

fn same_pair(a: &Eigenpair, b: &Eigenpair, tol: f64) -> bool {
    if (a.lambda - b.lambda).abs() > tol * a.lambda.abs().max(1.0) {
        return false;
    }
    let diff: f64 = a.f.iter().zip(&b.f).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let sum: f64 = a.f.iter().zip(&b.f).map(|(x, y)| (x + y).powi(2)).sum::<f64>().sqrt();
    diff.min(sum) <= tol.sqrt()
}

/// Runs `cfg.n_starts` damped-Newton solves and returns the distinct
/// eigenpairs they converged to.
pub fn find_eigenpairs(g: &SignedGraph, p: f64, cfg: &MultistartConfig) -> Result<EigenpairList, MultistartError> {
    if !(p >= 2.0 && p.fract() == 0.0 && p % 2.0 == 0.0) {
        return Err(MultistartError::OddP(p));
    }
    if g.n() > MAX_VERTICES {
        return Err(MultistartError::TooLarge(g.n()));
    }
    if g.n() == 0 || cfg.n_starts == 0 {
        return Err(MultistartError::BadConfig("need at least one vertex and one start".into()));
    }
    if !(cfg.newton_tol > 0.0 && cfg.dedupe_tol > 0.0) {
        return Err(MultistartError::BadConfig("tolerances must be positive".into()));
    }
    let pp = PParam::new(p).expect("even p >= 2");
    let sys = System { g, p: pp };

    let roots: Vec<Eigenpair> = (0..cfg.n_starts)
        .into_par_iter()
        .filter_map(|start| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(start as u64);
            let f0 = random_start(g, p, &mut rng);
            let lambda0 = rayleigh(g, pp, &f0).ok()?;
            let (lambda, mut f) = newton(&sys, f0, lambda0, cfg)?;
            canonical_sign(&mut f);
            let residual = verify_eigenpair(g, pp, lambda, &f).ok()?;
            Some(Eigenpair { lambda, f, residual })
        })
        .collect();

    let converged_count = roots.len();
    if converged_count == 0 {
        return Err(MultistartError::NoConvergence { starts: cfg.n_starts });
    }
    let mut sorted = roots;
    sorted.sort_by(|a, b| {
        b.lambda
            .total_cmp(&a.lambda)
            .then_with(|| a.f.iter().zip(&b.f).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal))
    });
    let mut pairs: Vec<Eigenpair> = Vec::new();
    for root in sorted {
        if !pairs.iter().any(|kept| same_pair(kept, &root, cfg.dedupe_tol)) {
            pairs.push(root);
        }
    }
    Ok(EigenpairList { pairs, starts_used: cfg.n_starts, converged_count })
}
