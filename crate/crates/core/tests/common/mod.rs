#![allow(dead_code)]

use plap::{Edge, Sign, SignedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus extra edges, so always connected.
pub fn connected_pairs(rng: &mut ChaCha8Rng, n: usize, extra_prob: f64) -> Vec<(usize, usize)> {
    let mut seen = std::collections::HashSet::new();
    let mut pairs = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        seen.insert((u, v));
        pairs.push((u, v));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !seen.contains(&(i, j)) && rng.random_bool(extra_prob) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Connected signless graph with `w ≡ 1`, `μ ≡ 1`, `κ ≡ 0`.
pub fn plain_connected(seed: u64, n_lo: usize, n_hi: usize) -> SignedGraph {
    let mut r = rng(seed);
    let n = r.random_range(n_lo..=n_hi);
    let prob = r.random_range(0.05..0.6);
    SignedGraph::unweighted(n, &connected_pairs(&mut r, n, prob)).unwrap()
}

/// Connected signless graph with random weights, measure and potential.
/// `negative_kappa` allows potentials below zero.
pub fn weighted_connected(seed: u64, n_lo: usize, n_hi: usize, negative_kappa: bool) -> SignedGraph {
    let mut r = rng(seed);
    let n = r.random_range(n_lo..=n_hi);
    let prob = r.random_range(0.05..0.6);
    let pairs = connected_pairs(&mut r, n, prob);
    let edges = pairs.iter().map(|&(i, j)| Edge::new(i, j, r.random_range(0.2..3.0), Sign::Minus)).collect();
    let mu = (0..n).map(|_| r.random_range(0.3..3.0)).collect();
    let lo = if negative_kappa { -2.0 } else { 0.0 };
    let kappa = (0..n).map(|_| r.random_range(lo..2.0)).collect();
    SignedGraph::new(mu, kappa, edges).unwrap()
}

/// Random graph with random signatures and attributes (not necessarily
/// connected).
pub fn random_signed(seed: u64, n_lo: usize, n_hi: usize) -> SignedGraph {
    let mut r = rng(seed);
    let n = r.random_range(n_lo..=n_hi);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.random_bool(0.5) {
                let s = if r.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
                edges.push(Edge::new(i, j, r.random_range(0.2..3.0), s));
            }
        }
    }
    let mu = (0..n).map(|_| r.random_range(0.3..3.0)).collect();
    let kappa = (0..n).map(|_| r.random_range(-2.0..2.0)).collect();
    SignedGraph::new(mu, kappa, edges).unwrap()
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

/// Largest eigenvalue of the p = 2 operator, `M^{-1}(D + A)` with
/// `D_ii = κ_i + Σ_j w_ij`, by dense power iteration on the symmetric form
/// `M^{-1/2}(D + A)M^{-1/2}`. Independent of the nonlinear solver.
#[allow(clippy::needless_range_loop)]
pub fn signless_matrix_lambda_max(g: &SignedGraph) -> f64 {
    let n = g.n();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = g.kappa()[i];
    }
    for e in g.edges() {
        m[e.i][e.i] += e.w;
        m[e.j][e.j] += e.w;
        m[e.i][e.j] += e.w;
        m[e.j][e.i] += e.w;
    }
    for i in 0..n {
        for j in 0..n {
            m[i][j] /= (g.mu()[i] * g.mu()[j]).sqrt();
        }
    }
    // shift so the spectrum is positive (handles negative potential)
    let shift = (0..n).map(|i| m[i].iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += shift;
    }
    let mut x = vec![1.0; n];
    let mut theta = 0.0;
    for _ in 0..2_000_000 {
        let y: Vec<f64> = m.iter().map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
        let xx: f64 = x.iter().map(|v| v * v).sum();
        theta = y.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / xx;
        let res: f64 = y.iter().zip(&x).map(|(a, b)| (a - theta * b).powi(2)).sum::<f64>().sqrt() / xx.sqrt();
        let norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
        if res <= 1e-12 * theta {
            break;
        }
    }
    theta - shift
}

pub fn max_rel_dev(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}
