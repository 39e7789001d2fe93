//! A small signed graph with a complete list of reference eigenpairs at
//! `p = 4`, used as a fixture by tests, the CLI and the benches.
//!
//! The graph is the 4-cycle 1–2–3–4–1 with `w_12 = w_23 = w_34 = 1`,
//! `w_14 = 2`, `σ = +1` on the path edges and `σ_14 = −1`,
//! `μ = (2, 1, 1, 1)` and `κ = (1, 1, 1, 2)`.

use crate::graph::{Edge, Sign, SignedGraph};

pub fn signed_c4() -> SignedGraph {
    SignedGraph::new(
        vec![2.0, 1.0, 1.0, 1.0],
        vec![1.0, 1.0, 1.0, 2.0],
        vec![
            Edge::new(0, 1, 1.0, Sign::Plus),
            Edge::new(1, 2, 1.0, Sign::Plus),
            Edge::new(2, 3, 1.0, Sign::Plus),
            Edge::new(0, 3, 2.0, Sign::Minus),
        ],
    )
    .expect("fixture is valid")
}

/// The twelve eigenpairs of the 4-Laplacian of [`signed_c4`], to four
/// significant figures, as `(λ, f)` in decreasing `λ`. The eigenfunctions
/// are normalized to unit μ-weighted 4-norm.
pub const SIGNED_C4_P4: [(f64, [f64; 4]); 12] = [
    (16.86, [0.5568, 0.4556, -0.6894, 0.8567]),
    (16.68, [0.6186, -0.4107, -0.5780, 0.8678]),
    (16.31, [0.5952, -0.01066, -0.6164, 0.8818]),
    (14.63, [0.6693, -0.6355, 0.4493, 0.7927]),
    (14.48, [0.6796, -0.5469, 0.1644, 0.8337]),
    (13.69, [-0.3717, 0.7471, -0.8258, 0.6560]),
    (13.44, [-0.1032, 0.6907, -0.8416, 0.7211]),
    (11.62, [0.5070, -0.8595, 0.7533, 0.05107]),
    (1.608, [-0.5715, 0.1737, 0.9169, 0.5296]),
    (1.364, [0.2339, 0.8174, 0.8588, 0.2459]),
    (1.301, [0.002953, 0.5181, 0.9742, 0.4060]),
    (0.7047, [0.8298, 0.3946, -0.006080, -0.4067]),
];
