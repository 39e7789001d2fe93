//! Eigenpairs of the p-Laplacian on signed weighted graphs.
//!
//! - [`power::solve_max`]: largest eigenpair of the signless p-Laplacian for
//!   any `p > 1`, with monotone two-sided eigenvalue brackets.
//! - [`multistart::find_eigenpairs`]: eigenpairs for even `p` by damped Newton
//!   from many random starts.
//! - [`tensor`]: the equivalent symmetric tensor pair for even `p`.
//! - [`screening`]: forbidden-subgraph screening by sweeping `p`.

pub mod bench;
pub mod format;
pub mod generate;
pub mod graph;
pub mod linear;
pub mod multistart;
pub mod operator;
pub mod power;
pub mod reference;
pub mod screening;
pub mod subgraph;
pub mod tensor;

pub use format::{parse_graph, read_graph_file, write_graph, write_graph_file, ParseError};
pub use graph::{Edge, GraphError, Sign, SignedGraph};
pub use multistart::{find_eigenpairs, EigenpairList, MultistartConfig, MultistartError};

pub use operator::{apply, p_norm, phi, rayleigh, shift_potential, signed_power, OperatorError, PParam};
pub use power::{solve_max, verify_eigenpair, Eigenpair, IterationTrace, SolveError, SolverConfig};
pub use screening::{criterion_sweep, lambda_max_signless, CriterionReport, Verdict};
pub use tensor::{build_tensor_pair, SparseSymmetricTensorPair, TensorError};

/// Formats a float with 17 significant digits, enough to round-trip any
/// `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
