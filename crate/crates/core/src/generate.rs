//! Standard graph families. Every generator produces `w ≡ 1`, `mu ≡ 1`,
//! `kappa ≡ 0` and `sigma ≡ -1`; use [`SignedGraph::with_signature`] or
//! [`SignedGraph::with_signatures`] to override the signature.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, SignedGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

fn bad(msg: impl Into<String>) -> GenerateError {
    GenerateError::BadParams(msg.into())
}

fn plain(n: usize, pairs: Vec<(usize, usize)>) -> SignedGraph {
    SignedGraph::unweighted(n, &pairs).expect("generators emit simple graphs")
}

pub fn path(n: usize) -> Result<SignedGraph, GenerateError> {
    if n == 0 {
        return Err(bad("path needs n >= 1"));
    }
    Ok(plain(n, (1..n).map(|v| (v - 1, v)).collect()))
}

pub fn cycle(n: usize) -> Result<SignedGraph, GenerateError> {
    if n < 3 {
        return Err(bad(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(plain(n, (0..n).map(|v| (v, (v + 1) % n)).collect()))
}

pub fn complete(n: usize) -> Result<SignedGraph, GenerateError> {
    if n == 0 {
        return Err(bad("complete graph needs n >= 1"));
    }
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(plain(n, pairs))
}

/// `n` isolated vertices.
pub fn empty(n: usize) -> Result<SignedGraph, GenerateError> {
    if n == 0 {
        return Err(bad("empty graph needs n >= 1"));
    }
    Ok(plain(n, Vec::new()))
}

/// The star `K_{1,d}`; the centre is vertex 0 (label 1).
pub fn star(d: usize) -> Result<SignedGraph, GenerateError> {
    if d == 0 {
        return Err(bad("star needs d >= 1"));
    }
    Ok(plain(d + 1, (1..=d).map(|v| (0, v)).collect()))
}

/// The `k`-dimensional hypercube `Q_k`.
pub fn hypercube(k: u32) -> Result<SignedGraph, GenerateError> {
    if k > 20 {
        return Err(bad(format!("hypercube dimension {k} too large")));
    }
    let n = 1usize << k;
    let pairs = (0..n)
        .flat_map(|v| (0..k).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(v, u)| v < u)
        .collect();
    Ok(plain(n, pairs))
}

/// Join `G ∨ H`: `H` is relabelled after `G` and every cross pair becomes a
/// unit signless edge. Attributes of both inputs are kept.
pub fn join(g: &SignedGraph, h: &SignedGraph) -> SignedGraph {
    let off = g.n();
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.extend(h.edges().iter().map(|e| Edge::new(e.i + off, e.j + off, e.w, e.sigma)));
    for i in 0..g.n() {
        for j in 0..h.n() {
            edges.push(Edge::unit(i, off + j));
        }
    }
    let mu = g.mu().iter().chain(h.mu()).copied().collect();
    let kappa = g.kappa().iter().chain(h.kappa()).copied().collect();
    SignedGraph::new(mu, kappa, edges).expect("join of valid graphs is valid")
}

/// Uniform random graph with exactly `m` edges on `n` vertices. Edges come
/// out sorted, and the result depends only on `(n, m, seed)`.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<SignedGraph, GenerateError> {
    let total = n.saturating_mul(n.saturating_sub(1)) / 2;
    if n == 0 {
        return Err(bad("gnm needs n >= 1"));
    }
    if m > total {
        return Err(bad(format!("m = {m} exceeds n(n-1)/2 = {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = index::sample(&mut rng, total, m).into_vec();
    picks.sort_unstable();
    let pairs = picks.into_iter().map(|t| pair_from_index(n, t)).collect();
    Ok(plain(n, pairs))
}

// Row-major enumeration of pairs i < j.
fn pair_from_index(n: usize, mut t: usize) -> (usize, usize) {
    let mut i = 0;
    loop {
        let row = n - 1 - i;
        if t < row {
            return (i, i + 1 + t);
        }
        t -= row;
        i += 1;
    }
}
