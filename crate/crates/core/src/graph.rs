//! Signed weighted graphs.
//!
//! A [`SignedGraph`] carries a positive vertex measure `mu`, a real potential
//! `kappa`, and undirected edges with positive weight and a signature in
//! `{+1, -1}`. Vertices are stored 0-based; everything user-facing (the text
//! format, the CLI, error messages) speaks 1-based labels.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Edge signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_i32(s: i32) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}

/// Undirected edge between 0-based vertices `i` and `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
    pub sigma: Sign,
}

impl Edge {
    pub fn new(i: usize, j: usize, w: f64, sigma: Sign) -> Self {
        Edge { i, j, w, sigma }
    }

    /// Unit-weight signless edge.
    pub fn unit(i: usize, j: usize) -> Self {
        Edge::new(i, j, 1.0, Sign::Minus)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} has nonpositive weight {2}")]
    NonpositiveWeight(usize, usize, f64),
    #[error("vertex {0} has nonpositive measure {1}")]
    NonpositiveMeasure(usize, f64),
    #[error("vertex {0} has non-finite potential {1}")]
    NonFinitePotential(usize, f64),
    #[error("vertex label {label} outside 1..={n}")]
    BadLabel { label: usize, n: usize },
    #[error("expected {expected} per-vertex values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

/// Checks every [`SignedGraph`] invariant. Errors name the first offender
/// using 1-based labels.
pub fn validate(n: usize, mu: &[f64], kappa: &[f64], edges: &[Edge]) -> Result<(), GraphError> {
    if mu.len() != n {
        return Err(GraphError::SizeMismatch { expected: n, got: mu.len() });
    }
    if kappa.len() != n {
        return Err(GraphError::SizeMismatch { expected: n, got: kappa.len() });
    }
    for (v, &m) in mu.iter().enumerate() {
        if !(m > 0.0 && m.is_finite()) {
            return Err(GraphError::NonpositiveMeasure(v + 1, m));
        }
    }
    for (v, &k) in kappa.iter().enumerate() {
        if !k.is_finite() {
            return Err(GraphError::NonFinitePotential(v + 1, k));
        }
    }
    let mut seen = HashSet::with_capacity(edges.len());
    for e in edges {
        for &end in &[e.i, e.j] {
            if end >= n {
                return Err(GraphError::BadLabel { label: end + 1, n });
            }
        }
        if e.i == e.j {
            return Err(GraphError::SelfLoop(e.i + 1));
        }
        if !(e.w > 0.0 && e.w.is_finite()) {
            return Err(GraphError::NonpositiveWeight(e.i + 1, e.j + 1, e.w));
        }
        if !seen.insert((e.i.min(e.j), e.i.max(e.j))) {
            return Err(GraphError::DuplicateEdge(e.i + 1, e.j + 1));
        }
    }
    Ok(())
}

/// An immutable, validated signed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    mu: Vec<f64>,
    kappa: Vec<f64>,
    edges: Vec<Edge>,
    // adj[v] = (neighbour, edge index)
    adj: Vec<Vec<(usize, usize)>>,
}

impl SignedGraph {
    pub fn new(mu: Vec<f64>, kappa: Vec<f64>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let n = mu.len();
        validate(n, &mu, &kappa, &edges)?;
        let mut adj = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            adj[e.i].push((e.j, k));
            adj[e.j].push((e.i, k));
        }
        Ok(SignedGraph { mu, kappa, edges, adj })
    }

    /// Graph with `w ≡ 1`, `mu ≡ 1`, `kappa ≡ 0` and `sigma ≡ -1` on the
    /// given 0-based vertex pairs.
    pub fn unweighted(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let edges = pairs.iter().map(|&(i, j)| Edge::unit(i, j)).collect();
        SignedGraph::new(vec![1.0; n], vec![0.0; n], edges)
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `v` with the index of the connecting edge.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_between(&self, i: usize, j: usize) -> Option<&Edge> {
        self.adj[i].iter().find(|&&(u, _)| u == j).map(|&(_, k)| &self.edges[k])
    }

    /// True when every edge has signature -1.
    pub fn is_signless(&self) -> bool {
        self.edges.iter().all(|e| e.sigma == Sign::Minus)
    }

    /// True when `w ≡ 1`, `mu ≡ 1` and `kappa ≡ 0`.
    pub fn is_plain(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
            && self.mu.iter().all(|&m| m == 1.0)
            && self.kappa.iter().all(|&k| k == 0.0)
    }

    /// Connectivity of the underlying unsigned graph. The single-vertex
    /// graph is connected; the empty graph is not.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        n > 0 && self.components().len() == 1
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![s];
            label[s] = id;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &(u, _) in &self.adj[v] {
                    if label[u] == usize::MAX {
                        label[u] = id;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `vertices` (0-based, in the given order), keeping
    /// weights, signatures, measure and potential.
    pub fn induced(&self, vertices: &[usize]) -> SignedGraph {
        let mut pos = vec![usize::MAX; self.n()];
        for (k, &v) in vertices.iter().enumerate() {
            pos[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.i] != usize::MAX && pos[e.j] != usize::MAX)
            .map(|e| Edge::new(pos[e.i], pos[e.j], e.w, e.sigma))
            .collect();
        let mu = vertices.iter().map(|&v| self.mu[v]).collect();
        let kappa = vertices.iter().map(|&v| self.kappa[v]).collect();
        SignedGraph::new(mu, kappa, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// Same graph with potential replaced.
    pub fn with_kappa(&self, kappa: Vec<f64>) -> Result<SignedGraph, GraphError> {
        SignedGraph::new(self.mu.clone(), kappa, self.edges.clone())
    }

    /// Same graph with measure replaced.
    pub fn with_mu(&self, mu: Vec<f64>) -> Result<SignedGraph, GraphError> {
        SignedGraph::new(mu, self.kappa.clone(), self.edges.clone())
    }

    /// Same graph with every edge given signature `sigma`.
    pub fn with_signature(&self, sigma: Sign) -> SignedGraph {
        let edges = self.edges.iter().map(|e| Edge { sigma, ..*e }).collect();
        SignedGraph::new(self.mu.clone(), self.kappa.clone(), edges).expect("valid")
    }

    /// Same graph with per-edge signatures, in edge order.
    pub fn with_signatures(&self, sigmas: &[Sign]) -> Result<SignedGraph, GraphError> {
        if sigmas.len() != self.edges.len() {
            return Err(GraphError::SizeMismatch { expected: self.edges.len(), got: sigmas.len() });
        }
        let edges = self.edges.iter().zip(sigmas).map(|(e, &sigma)| Edge { sigma, ..*e }).collect();
        SignedGraph::new(self.mu.clone(), self.kappa.clone(), edges)
    }

    /// Same graph with the given edges only (by index into [`edges`](Self::edges)).
    pub fn edge_subgraph(&self, keep: &[usize]) -> SignedGraph {
        let edges = keep.iter().map(|&k| self.edges[k]).collect();
        SignedGraph::new(self.mu.clone(), self.kappa.clone(), edges).expect("valid")
    }

    /// Unit weights, unit measure, zero potential, signless; same topology.
    pub fn to_plain(&self) -> SignedGraph {
        let edges = self.edges.iter().map(|e| Edge::unit(e.i, e.j)).collect();
        SignedGraph::new(vec![1.0; self.n()], vec![0.0; self.n()], edges).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> SignedGraph {
        SignedGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn minimal_graph_is_valid() {
        assert!(SignedGraph::unweighted(2, &[(0, 1)]).is_ok());
    }

    #[test]
    fn validation_errors_name_offender() {
        assert_eq!(
            SignedGraph::unweighted(2, &[(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        let bad_w = SignedGraph::new(vec![1.0; 2], vec![0.0; 2], vec![Edge::new(0, 1, -1.0, Sign::Minus)]);
        assert_eq!(bad_w.unwrap_err(), GraphError::NonpositiveWeight(1, 2, -1.0));
        assert_eq!(
            SignedGraph::unweighted(3, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(2, 1)
        );
        assert_eq!(
            SignedGraph::unweighted(3, &[(0, 3)]).unwrap_err(),
            GraphError::BadLabel { label: 4, n: 3 }
        );
        let bad_mu = SignedGraph::new(vec![1.0, 0.0], vec![0.0; 2], vec![]);
        assert_eq!(bad_mu.unwrap_err(), GraphError::NonpositiveMeasure(2, 0.0));
        let nan_w = SignedGraph::new(vec![1.0; 2], vec![0.0; 2], vec![Edge::new(0, 1, f64::NAN, Sign::Minus)]);
        assert!(matches!(nan_w, Err(GraphError::NonpositiveWeight(..))));
    }

    #[test]
    fn connectivity() {
        assert!(c4().is_connected());
        let two = SignedGraph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(SignedGraph::unweighted(1, &[]).unwrap().is_connected());
        assert!(!SignedGraph::unweighted(0, &[]).unwrap().is_connected());
    }

    #[test]
    fn induced_keeps_attributes() {
        let g = SignedGraph::new(
            vec![2.0, 1.0, 3.0],
            vec![0.5, -1.0, 0.0],
            vec![Edge::new(0, 1, 2.0, Sign::Plus), Edge::new(1, 2, 1.0, Sign::Minus)],
        )
        .unwrap();
        let h = g.induced(&[2, 1]);
        assert_eq!(h.mu(), &[3.0, 1.0]);
        assert_eq!(h.kappa(), &[0.0, -1.0]);
        assert_eq!(h.edges(), &[Edge::new(1, 0, 1.0, Sign::Minus)]);
    }
}
