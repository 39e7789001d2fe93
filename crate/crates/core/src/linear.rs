//! Largest eigenvalues of the classical graph matrices: adjacency `A`,
//! Laplacian `L = D − A` and signless Laplacian `Q = D + A`.

use nalgebra::DMatrix;

use crate::graph::SignedGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearBaselines {
    pub adjacency: f64,
    pub laplacian: f64,
    pub signless: f64,
}

fn largest(m: DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.symmetric_eigen().eigenvalues.max()
}

/// Weighted adjacency matrix (signatures ignored).
pub fn adjacency_matrix(g: &SignedGraph) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(g.n(), g.n());
    for e in g.edges() {
        a[(e.i, e.j)] = e.w;
        a[(e.j, e.i)] = e.w;
    }
    a
}

/// Largest eigenvalues of `A`, `L` and `Q` built from edge weights.
pub fn linear_baselines(g: &SignedGraph) -> LinearBaselines {
    let a = adjacency_matrix(g);
    let d = DMatrix::from_diagonal(&a.row_sum().transpose());
    LinearBaselines {
        adjacency: largest(a.clone()),
        laplacian: largest(&d - &a),
        signless: largest(&d + &a),
    }
}
