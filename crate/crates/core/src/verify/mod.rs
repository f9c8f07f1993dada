//! Independent checkers for everything a run claims: decomposition validity,
//! embedding certificates, an exact pathwidth oracle and the edge-count bound.

mod decomposition;
mod embedding;
mod oracle;

pub use decomposition::{validate_decomposition, DecompositionViolation, PathDecomposition};
pub use embedding::{validate_embedding, EmbeddingCertificate, EmbeddingViolation, GuestEdgePath};
pub use oracle::{
    exact_pathwidth, exact_pathwidth_with_limit, OracleError, DEFAULT_ORACLE_LIMIT,
    MAX_ORACLE_LIMIT,
};

use crate::graph::Graph;
use crate::guest::canon::canonical_string;

/// `|E| <= n t - (t^2 + t) / 2`, the most edges a graph of pathwidth at most
/// `t` can have. For `n <= t` the bound is evaluated at `t = n - 1`, where it
/// equals `n (n - 1) / 2`.
pub fn check_edge_bound(g: &Graph, t: u64) -> bool {
    let n = g.n() as u64;
    if n == 0 {
        return true;
    }
    let t = t.min(n - 1);
    g.m() as u64 <= n * t - (t * t + t) / 2
}

/// Replaces every degree-2 vertex of a tree by an edge between its
/// neighbors. Paths collapse to a single edge.
pub fn smooth_tree(g: &Graph) -> Graph {
    assert!(g.is_tree());
    if g.n() <= 2 {
        return g.clone();
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) != 2).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for &v in &keep {
        for &w in g.neighbors(v) {
            // walk through degree-2 vertices
            let (mut prev, mut cur) = (v, w);
            while g.degree(cur) == 2 {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&x| x != prev)
                    .unwrap();
                prev = cur;
                cur = next;
            }
            if v < cur {
                edges.push((index[v], index[cur]));
            }
        }
    }
    Graph::from_edges(keep.len(), edges).expect("smoothing a tree keeps it simple")
}

/// Whether two trees are homeomorphic (isomorphic after smoothing).
pub fn trees_homeomorphic(a: &Graph, b: &Graph) -> bool {
    canonical_string(&smooth_tree(a)) == canonical_string(&smooth_tree(b))
}
