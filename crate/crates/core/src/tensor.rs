//! Tensor form of the p-Laplacian eigenproblem for even `p`.
//!
//! For even `p` the pair `(λ, f)` is an eigenpair of `Δ_p` exactly when
//! `T f = λ B f` for two symmetric order-`p` tensors. `T` is supported on
//! index tuples with at most two distinct values:
//!
//! - all indices equal `i`: `Σ_{j~i} w_ij + κ_i`
//! - `l` copies of `i` and `p − l` copies of a neighbour `j`: `(−σ_ij)^{p−l} w_ij`
//! - anything else: `0`
//!
//! and `B` is diagonal with `B_{i…i} = μ_i`. Storage is factored per vertex
//! and per edge; no `n^p` array is ever built.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::SignedGraph;
use crate::operator::{apply, PParam};

/// Largest even order supported. Binomials `C(p−1, l)` stay exact in `u64`.
pub const MAX_ORDER: u32 = 30;

/// Work bound for [`tensor_apply_naive`]: `n^{p−1}` tuples per row.
pub const NAIVE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("tensor order must be an even integer >= 2, got {0}")]
    OddP(f64),
    #[error("tensor order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u32),
    #[error("naive contraction needs n^(p-1) = {0} terms per row, limit is {NAIVE_LIMIT}")]
    TooLarge(u64),
}

#[derive(Debug, Clone, PartialEq)]
struct EdgeTerm {
    i: usize,
    j: usize,
    w: f64,
    // −σ_ij
    neg_sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetricTensorPair {
    p: u32,
    diag: Vec<f64>,
    edges: Vec<EdgeTerm>,
    lookup: HashMap<(usize, usize), usize>,
    b_diag: Vec<f64>,
    // binom[l] = C(p−1, l)
    binom: Vec<f64>,
}

fn binomials(m: u32) -> Vec<f64> {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row.into_iter().map(|c| c as f64).collect()
}

/// Builds `(T, B)` for the graph at even order `p`.
pub fn build_tensor_pair(g: &SignedGraph, p: f64) -> Result<SparseSymmetricTensorPair, TensorError> {
    if !(p >= 2.0 && p.fract() == 0.0 && p % 2.0 == 0.0) {
        return Err(TensorError::OddP(p));
    }
    if p > MAX_ORDER as f64 {
        return Err(TensorError::OrderTooLarge(p as u32));
    }
    let p = p as u32;
    let mut diag = g.kappa().to_vec();
    let mut edges = Vec::with_capacity(g.num_edges());
    let mut lookup = HashMap::with_capacity(g.num_edges());
    for (k, e) in g.edges().iter().enumerate() {
        diag[e.i] += e.w;
        diag[e.j] += e.w;
        edges.push(EdgeTerm { i: e.i, j: e.j, w: e.w, neg_sigma: -e.sigma.value() });
        lookup.insert((e.i.min(e.j), e.i.max(e.j)), k);
    }
    Ok(SparseSymmetricTensorPair {
        p,
        diag,
        edges,
        lookup,
        b_diag: g.mu().to_vec(),
        binom: binomials(p - 1),
    })
}

impl SparseSymmetricTensorPair {
    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `T_{i…i} = Σ_{j~i} w_ij + κ_i`.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn b_diag(&self) -> &[f64] {
        &self.b_diag
    }

    /// Entry of `T` at a 0-based index tuple of length `p`.
    pub fn entry_t(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.p as usize, "index tuple must have length p");
        let a = idx[0];
        let b = match idx.iter().find(|&&x| x != a) {
            None => return self.diag[a],
            Some(&b) => b,
        };
        if idx.iter().any(|&x| x != a && x != b) {
            return 0.0;
        }
        let Some(&k) = self.lookup.get(&(a.min(b), a.max(b))) else {
            return 0.0;
        };
        let e = &self.edges[k];
        let count_b = idx.iter().filter(|&&x| x == b).count() as i32;
        // p is even, so (−σ)^{p−l} has the same parity whichever index is l
        e.neg_sigma.powi(count_b) * e.w
    }

    /// Entry of `B`.
    pub fn entry_b(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.p as usize);
        if idx.iter().all(|&x| x == idx[0]) {
            self.b_diag[idx[0]]
        } else {
            0.0
        }
    }

    /// `(T f)_i` by the binomial expansion over each incident edge:
    /// `d_i f_i^{p−1} + Σ_{j~i} Σ_{l=1}^{p−1} C(p−1,l) (−σ_ij)^l w_ij f_i^{p−1−l} f_j^l`.
    pub fn tensor_apply(&self, f: &[f64]) -> Vec<f64> {
        assert_eq!(f.len(), self.dim());
        let m = (self.p - 1) as i32;
        let mut out: Vec<f64> = self.diag.iter().zip(f).map(|(&d, &x)| d * x.powi(m)).collect();
        for e in &self.edges {
            let (fi, fj) = (f[e.i], f[e.j]);
            let mut to_i = 0.0;
            let mut to_j = 0.0;
            for l in 1..=m {
                let c = self.binom[l as usize] * e.neg_sigma.powi(l) * e.w;
                to_i += c * fi.powi(m - l) * fj.powi(l);
                to_j += c * fj.powi(m - l) * fi.powi(l);
            }
            out[e.i] += to_i;
            out[e.j] += to_j;
        }
        out
    }

    /// `(B f)_i = μ_i f_i^{p−1}`.
    pub fn b_apply(&self, f: &[f64]) -> Vec<f64> {
        assert_eq!(f.len(), self.dim());
        let m = (self.p - 1) as i32;
        self.b_diag.iter().zip(f).map(|(&mu, &x)| mu * x.powi(m)).collect()
    }

    /// `‖T f − λ B f‖_∞`.
    pub fn residual(&self, lambda: f64, f: &[f64]) -> f64 {
        let t = self.tensor_apply(f);
        let b = self.b_apply(f);
        t.iter().zip(&b).map(|(x, y)| (x - lambda * y).abs()).fold(0.0, f64::max)
    }
}

/// `(T f)_i = Σ_{i_2…i_p} T_{i,i_2,…,i_p} f_{i_2}⋯f_{i_p}` by enumerating
/// every index tuple through [`SparseSymmetricTensorPair::entry_t`].
pub fn tensor_apply_naive(t: &SparseSymmetricTensorPair, f: &[f64]) -> Result<Vec<f64>, TensorError> {
    let n = t.dim();
    let tail = (t.p - 1) as usize;
    let work = (n as u64).checked_pow(tail as u32).unwrap_or(u64::MAX);
    if work > NAIVE_LIMIT {
        return Err(TensorError::TooLarge(work));
    }
    assert_eq!(f.len(), n);
    let mut out = vec![0.0; n];
    let mut idx = vec![0usize; t.p as usize];
    for (i, o) in out.iter_mut().enumerate() {
        idx[0] = i;
        idx[1..].iter_mut().for_each(|x| *x = 0);
        if n == 0 {
            continue;
        }
        loop {
            let entry = t.entry_t(&idx);
            if entry != 0.0 {
                *o += entry * idx[1..].iter().map(|&k| f[k]).product::<f64>();
            }
            // odometer increment over positions 1..p
            let mut pos = tail;
            loop {
                if pos == 0 {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    Ok(out)
}

/// Largest deviations seen by [`tensor_check`], each relative to the
/// sup-norm of the reference vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorCheck {
    /// `tensor_apply` against [`tensor_apply_naive`]; `None` past [`NAIVE_LIMIT`].
    pub naive: Option<f64>,
    /// `tensor_apply` against `μ ⊙ Δ_p f`.
    pub laplacian: f64,
}

fn rel_dev(a: &[f64], reference: &[f64]) -> f64 {
    let scale = reference.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let diff = a.iter().zip(reference).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Compares the tensor contraction with the naive enumeration and with the
/// operator on `trials` vectors uniform in `[-1, 1]^n`.
pub fn tensor_check(g: &SignedGraph, p: f64, trials: usize, seed: u64) -> Result<TensorCheck, TensorError> {
    let t = build_tensor_pair(g, p)?;
    let pp = PParam::new(p).map_err(|_| TensorError::OddP(p))?;
    let work = (g.n() as u64).checked_pow(t.order() - 1).unwrap_or(u64::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut naive = (work <= NAIVE_LIMIT).then_some(0.0f64);
    let mut laplacian = 0.0f64;
    for _ in 0..trials {
        let f: Vec<f64> = (0..g.n()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let fast = t.tensor_apply(&f);
        let lap: Vec<f64> = apply(g, pp, &f).iter().zip(g.mu()).map(|(d, m)| d * m).collect();
        laplacian = laplacian.max(rel_dev(&fast, &lap));
        if let Some(dev) = naive.as_mut() {
            *dev = dev.max(rel_dev(&fast, &tensor_apply_naive(&t, &f)?));
        }
    }
    Ok(TensorCheck { naive, laplacian })
}
