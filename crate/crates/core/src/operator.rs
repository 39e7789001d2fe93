//! The graph p-Laplacian and the scalar maps built around it.
//!
//! For a signed graph the operator is
//!
//! ```text
//! (Δ_p f)_i = (1/μ_i) · ( Σ_{j~i} w_ij Φ_p(f_i − σ_ij f_j) + κ_i Φ_p(f_i) )
//! ```
//!
//! with `Φ_p(t) = |t|^{p−2} t` and `Φ_p(0) = 0`.

use thiserror::Error;

use crate::graph::SignedGraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("p must be a finite real > 1, got {0}")]
    InvalidP(f64),
    #[error("function is identically zero")]
    ZeroFunction,
}

/// The exponent `p`, always finite and strictly greater than one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PParam(f64);

impl PParam {
    pub fn new(p: f64) -> Result<Self, OperatorError> {
        if p.is_finite() && p > 1.0 {
            Ok(PParam(p))
        } else {
            Err(OperatorError::InvalidP(p))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Even integer value of `p`, if it is one.
    pub fn as_even(self) -> Option<u32> {
        let p = self.0;
        (p.fract() == 0.0 && p <= u32::MAX as f64 && (p as u32) % 2 == 0).then_some(p as u32)
    }
}

impl TryFrom<f64> for PParam {
    type Error = OperatorError;
    fn try_from(p: f64) -> Result<Self, Self::Error> {
        PParam::new(p)
    }
}

/// `|t|^q`, exactly zero at `t = 0`.
#[inline]
pub fn abs_pow(t: f64, q: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.abs().powf(q)
    }
}

/// `Φ_p(t) = |t|^{p−2} t`.
#[inline]
pub fn phi(t: f64, p: PParam) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.abs().powf(p.0 - 1.0).copysign(t)
    }
}

/// Entrywise `|f_i|^t · sign(f_i)`.
pub fn signed_power(f: &[f64], t: f64) -> Vec<f64> {
    f.iter().map(|&x| if x == 0.0 { 0.0 } else { x.abs().powf(t).copysign(x) }).collect()
}

/// `Δ_p f`. One pass over the edges with one power evaluation per edge.
pub fn apply(g: &SignedGraph, p: PParam, f: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; g.n()];
    apply_into(g, p, f, &mut out);
    out
}

/// `Δ_p f` written into `out`.
pub fn apply_into(g: &SignedGraph, p: PParam, f: &[f64], out: &mut [f64]) {
    assert_eq!(f.len(), g.n(), "function length must equal vertex count");
    assert_eq!(out.len(), g.n());
    for ((o, &k), &x) in out.iter_mut().zip(g.kappa()).zip(f) {
        *o = k * phi(x, p);
    }
    for e in g.edges() {
        let s = e.sigma.value();
        let t = e.w * phi(f[e.i] - s * f[e.j], p);
        // Φ_p(f_j − σ f_i) = −σ Φ_p(f_i − σ f_j)
        out[e.i] += t;
        out[e.j] -= s * t;
    }
    for (o, &m) in out.iter_mut().zip(g.mu()) {
        *o /= m;
    }
}

/// μ-weighted norm `(Σ μ_i |f_i|^q)^{1/q}`.
pub fn p_norm(g: &SignedGraph, f: &[f64], q: f64) -> f64 {
    assert_eq!(f.len(), g.n());
    let s: f64 = f.iter().zip(g.mu()).map(|(&x, &m)| m * abs_pow(x, q)).sum();
    s.powf(1.0 / q)
}

/// Numerator of the Rayleigh quotient:
/// `Σ_E w_ij |f_i − σ_ij f_j|^p + Σ_i κ_i |f_i|^p`.
pub fn energy(g: &SignedGraph, p: PParam, f: &[f64]) -> f64 {
    let q = p.0;
    let edges: f64 = g
        .edges()
        .iter()
        .map(|e| e.w * abs_pow(f[e.i] - e.sigma.value() * f[e.j], q))
        .sum();
    let pot: f64 = g.kappa().iter().zip(f).map(|(&k, &x)| k * abs_pow(x, q)).sum();
    edges + pot
}

/// Rayleigh quotient `R_p(f)`; invariant under `f ↦ c f`, `c ≠ 0`.
pub fn rayleigh(g: &SignedGraph, p: PParam, f: &[f64]) -> Result<f64, OperatorError> {
    assert_eq!(f.len(), g.n());
    if f.iter().all(|&x| x == 0.0) {
        return Err(OperatorError::ZeroFunction);
    }
    // rescale so large p cannot overflow the powers
    let scale = f.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let h: Vec<f64> = f.iter().map(|&x| x / scale).collect();
    let den = p_norm(g, &h, p.0).powf(p.0);
    Ok(energy(g, p, &h) / den)
}

/// Shifts the potential to be nonnegative: when some `κ_i < 0`, returns the
/// graph with `κ'_i = κ_i + c μ_i`, `c = max_i |κ_i / μ_i|`. Every eigenvalue
/// of the shifted operator is the original one plus `c`.
pub fn shift_potential(g: &SignedGraph) -> (SignedGraph, f64) {
    if g.kappa().iter().all(|&k| k >= 0.0) {
        return (g.clone(), 0.0);
    }
    let c = g
        .kappa()
        .iter()
        .zip(g.mu())
        .map(|(&k, &m)| (k / m).abs())
        .fold(0.0, f64::max);
    let kappa = g.kappa().iter().zip(g.mu()).map(|(&k, &m)| k + c * m).collect();
    let shifted = g.with_kappa(kappa).expect("shift keeps potential finite");
    (shifted, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle;
    use crate::graph::{Edge, Sign};
    use proptest::prelude::*;

    fn p(x: f64) -> PParam {
        PParam::new(x).unwrap()
    }

    #[test]
    fn p_must_exceed_one() {
        assert!(PParam::new(1.0).is_err());
        assert!(PParam::new(0.5).is_err());
        assert!(PParam::new(f64::NAN).is_err());
        assert!(PParam::new(f64::INFINITY).is_err());
        assert_eq!(p(4.0).as_even(), Some(4));
        assert_eq!(p(3.0).as_even(), None);
        assert_eq!(p(10.0 / 3.0).as_even(), None);
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(2.0, p(3.0)), 4.0);
        assert_eq!(phi(0.0, p(1.5)), 0.0);
        assert_eq!(phi(-2.0, p(4.0)), -8.0);
    }

    #[test]
    fn signed_power_values() {
        assert_eq!(signed_power(&[4.0, -9.0], 0.5), vec![2.0, -3.0]);
        assert_eq!(signed_power(&[1.0, 1.0, 1.0], 7.3), vec![1.0; 3]);
        let r = signed_power(&[-8.0], 1.0 / 3.0);
        assert!((r[0] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn apply_single_edge() {
        let g = SignedGraph::unweighted(2, &[(0, 1)]).unwrap();
        assert_eq!(apply(&g, p(3.0), &[1.0, 1.0]), vec![4.0, 4.0]);
    }

    #[test]
    fn apply_regular_cycle() {
        let g = cycle(4).unwrap();
        assert_eq!(apply(&g, p(4.0), &[1.0; 4]), vec![16.0; 4]);
    }

    #[test]
    fn apply_signed_edge_direction() {
        // σ = +1: (Δ f)_1 = Φ(f1 − f2), (Δ f)_2 = Φ(f2 − f1)
        let g = SignedGraph::new(vec![1.0; 2], vec![0.0; 2], vec![Edge::new(0, 1, 1.0, Sign::Plus)]).unwrap();
        assert_eq!(apply(&g, p(3.0), &[3.0, 1.0]), vec![4.0, -4.0]);
    }

    #[test]
    fn norms() {
        let g = SignedGraph::unweighted(2, &[]).unwrap();
        assert_eq!(p_norm(&g, &[3.0, 4.0], 2.0), 5.0);
        assert_eq!(p_norm(&g, &[0.0, 0.0], 3.0), 0.0);
    }

    #[test]
    fn rayleigh_values() {
        let edge = SignedGraph::unweighted(2, &[(0, 1)]).unwrap();
        assert!((rayleigh(&edge, p(2.0), &[1.0, 1.0]).unwrap() - 2.0).abs() < 1e-14);
        let c = cycle(4).unwrap();
        for q in [1.5, 2.0, 3.7] {
            let r = rayleigh(&c, p(q), &[1.0; 4]).unwrap();
            assert!((r - 2f64.powf(q)).abs() < 1e-12 * r);
        }
        assert_eq!(rayleigh(&c, p(2.0), &[0.0; 4]), Err(OperatorError::ZeroFunction));
    }

    #[test]
    fn shift_examples() {
        let g = SignedGraph::unweighted(2, &[(0, 1)]).unwrap();
        let (h, c) = shift_potential(&g);
        assert_eq!((h, c), (g.clone(), 0.0));

        let g2 = SignedGraph::new(vec![1.0, 2.0], vec![-3.0, 1.0], vec![Edge::unit(0, 1)]).unwrap();
        let (h2, c2) = shift_potential(&g2);
        assert_eq!(c2, 3.0);
        assert_eq!(h2.kappa(), &[0.0, 7.0]);

        let g3 = g.with_kappa(vec![-1.0, -1.0]).unwrap();
        let (h3, c3) = shift_potential(&g3);
        assert_eq!(c3, 1.0);
        assert_eq!(h3.kappa(), &[0.0, 0.0]);
    }

    // Random signed graph on n vertices with general attributes.
    fn signed_graph(max_n: usize) -> impl Strategy<Value = SignedGraph> {
        (2..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let m = pairs.len();
            (
                proptest::collection::vec(any::<bool>(), m),
                proptest::collection::vec(0.1f64..3.0, m),
                proptest::collection::vec(any::<bool>(), m),
                proptest::collection::vec(0.2f64..3.0, n),
                proptest::collection::vec(-2.0f64..2.0, n),
            )
                .prop_map(move |(keep, w, s, mu, kappa)| {
                    let edges = pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| keep[*k])
                        .map(|(k, &(i, j))| Edge::new(i, j, w[k], if s[k] { Sign::Plus } else { Sign::Minus }))
                        .collect();
                    SignedGraph::new(mu, kappa, edges).unwrap()
                })
        })
    }

    fn graph_and_fn() -> impl Strategy<Value = (SignedGraph, Vec<f64>)> {
        signed_graph(7).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), proptest::collection::vec(-2.0f64..2.0, n))
        })
    }

    proptest! {
        #[test]
        fn homogeneity((g, f) in graph_and_fn(), q in 1.1f64..6.0, c in -3.0f64..3.0) {
            let pp = p(q);
            let base = apply(&g, pp, &f);
            let scaled: Vec<f64> = f.iter().map(|x| c * x).collect();
            let lhs = apply(&g, pp, &scaled);
            let k = phi(c, pp);
            let scale = base.iter().fold(1e-300f64, |a, x| a.max((k * x).abs()));
            for (a, b) in lhs.iter().zip(&base) {
                prop_assert!((a - k * b).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn summation_identity((g, f) in graph_and_fn(), q in 1.1f64..6.0) {
            let pp = p(q);
            let d = apply(&g, pp, &f);
            let lhs: f64 = (0..g.n()).map(|i| g.mu()[i] * f[i] * d[i]).sum();
            let rhs = energy(&g, pp, &f);
            let mag: f64 = g.edges().iter().map(|e| e.w * abs_pow(f[e.i].abs() + f[e.j].abs(), q)).sum::<f64>()
                + g.kappa().iter().zip(&f).map(|(k, x)| k.abs() * abs_pow(*x, q)).sum::<f64>();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * mag.max(1e-300));
        }

        #[test]
        fn rayleigh_scale_invariant((g, f) in graph_and_fn(), q in 1.1f64..6.0, c in 0.1f64..10.0) {
            prop_assume!(f.iter().any(|&x| x != 0.0));
            let pp = p(q);
            let r1 = rayleigh(&g, pp, &f).unwrap();
            let fc: Vec<f64> = f.iter().map(|x| -c * x).collect();
            let r2 = rayleigh(&g, pp, &fc).unwrap();
            prop_assert!((r1 - r2).abs() <= 1e-12 * (1.0 + r1.abs()));
        }

        #[test]
        fn monotone_on_positive_cone(
            (g, f) in graph_and_fn(),
            bumps in proptest::collection::vec(0.0f64..1.0, 7),
            q in 1.1f64..6.0,
        ) {
            let g = g.with_signature(Sign::Minus);
            let g = g.with_kappa(g.kappa().iter().map(|k| k.abs()).collect()).unwrap();
            let lo: Vec<f64> = f.iter().map(|x| x.abs()).collect();
            let hi: Vec<f64> = lo.iter().zip(&bumps).map(|(x, b)| x + b).collect();
            let pp = p(q);
            let a = apply(&g, pp, &lo);
            let b = apply(&g, pp, &hi);
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(*x <= *y + 1e-12 * y.abs());
            }
        }

        #[test]
        fn phi_is_signed_power(f in proptest::collection::vec(-5.0f64..5.0, 1..8), q in 1.05f64..8.0) {
            let sp = signed_power(&f, q - 1.0);
            for (x, s) in f.iter().zip(&sp) {
                prop_assert_eq!(phi(*x, p(q)), *s);
            }
        }
    }
}
