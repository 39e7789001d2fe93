//! Subgraph containment: `G'` sits inside `G` under an injection that
//! preserves edges with their weights and the vertex measure and potential.
//! Signatures are ignored.

use thiserror::Error;

use crate::graph::SignedGraph;

/// Largest vertex count for which containment is decided by exhaustive
/// search over injections.
pub const MAX_SEARCH_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubgraphError {
    #[error("exhaustive subgraph search is limited to {MAX_SEARCH_VERTICES} vertices (got {0} and {1})")]
    TooLargeForSearch(usize, usize),
    #[error("mapping must be an injection into 0..{n} of length {expected}")]
    BadMapping { expected: usize, n: usize },
}

fn vertex_matches(gp: &SignedGraph, g: &SignedGraph, a: usize, b: usize) -> bool {
    gp.mu()[a] == g.mu()[b] && gp.kappa()[a] == g.kappa()[b]
}

fn check_mapping(gp: &SignedGraph, g: &SignedGraph, map: &[usize]) -> bool {
    (0..gp.n()).all(|a| vertex_matches(gp, g, a, map[a]))
        && gp
            .edges()
            .iter()
            .all(|e| g.edge_between(map[e.i], map[e.j]).is_some_and(|f| f.w == e.w))
}

/// Whether `gp` is a subgraph of `g`. With `mapping` (0-based, `mapping[a]`
/// is the image of vertex `a` of `gp`) only that injection is checked;
/// without it, all injections are searched.
pub fn is_subgraph(
    gp: &SignedGraph,
    g: &SignedGraph,
    mapping: Option<&[usize]>,
) -> Result<bool, SubgraphError> {
    if let Some(map) = mapping {
        let mut used = vec![false; g.n()];
        let injective = map.len() == gp.n()
            && map.iter().all(|&b| b < g.n() && !std::mem::replace(&mut used[b], true));
        if !injective {
            return Err(SubgraphError::BadMapping { expected: gp.n(), n: g.n() });
        }
        return Ok(check_mapping(gp, g, map));
    }
    if gp.n() > MAX_SEARCH_VERTICES || g.n() > MAX_SEARCH_VERTICES {
        return Err(SubgraphError::TooLargeForSearch(gp.n(), g.n()));
    }
    if gp.n() > g.n() || gp.num_edges() > g.num_edges() {
        return Ok(false);
    }
    // Place high-degree vertices first to prune early.
    let mut order: Vec<usize> = (0..gp.n()).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(gp.degree(a)));
    let mut map = vec![usize::MAX; gp.n()];
    let mut used = vec![false; g.n()];
    Ok(extend(gp, g, &order, 0, &mut map, &mut used))
}

fn extend(
    gp: &SignedGraph,
    g: &SignedGraph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&a) = order.get(depth) else {
        return true;
    };
    for b in 0..g.n() {
        if used[b] || g.degree(b) < gp.degree(a) || !vertex_matches(gp, g, a, b) {
            continue;
        }
        // every already-placed neighbour of `a` must map to a neighbour of `b`
        let consistent = gp.neighbors(a).iter().all(|&(c, k)| {
            map[c] == usize::MAX
                || g.edge_between(b, map[c]).is_some_and(|f| f.w == gp.edges()[k].w)
        });
        if !consistent {
            continue;
        }
        map[a] = b;
        used[b] = true;
        if extend(gp, g, order, depth + 1, map, used) {
            return true;
        }
        map[a] = usize::MAX;
        used[b] = false;
    }
    false
}
