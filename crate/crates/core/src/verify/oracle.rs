//! Exact pathwidth by dynamic programming over vertex subsets.
//!
//! Pathwidth equals the vertex separation number: the minimum, over vertex
//! orderings, of the largest number of already-placed vertices that still
//! have a neighbor to come. For a placed set `S`,
//! `cost(S) = max(boundary(S), min_{v in S} cost(S - v))`.

use thiserror::Error;

use crate::graph::Graph;

/// Default vertex limit for [`exact_pathwidth`].
pub const DEFAULT_ORACLE_LIMIT: usize = 20;
/// Absolute vertex limit (4 Mi table entries).
pub const MAX_ORACLE_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has {n} vertices, oracle limit is {limit}")]
pub struct OracleError {
    pub n: usize,
    pub limit: usize,
}

pub fn exact_pathwidth(g: &Graph) -> Result<usize, OracleError> {
    exact_pathwidth_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

/// Same as [`exact_pathwidth`] with a caller-chosen limit, clamped to
/// [`MAX_ORACLE_LIMIT`].
pub fn exact_pathwidth_with_limit(g: &Graph, limit: usize) -> Result<usize, OracleError> {
    let limit = limit.min(MAX_ORACLE_LIMIT);
    let n = g.n();
    if n > limit {
        return Err(OracleError { n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full = (1u32 << n) - 1;
    let mut cost = vec![0u8; 1usize << n];
    for s in 1..=full {
        let outside = !s & full;
        let mut boundary = 0u8;
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if nbr[v] & outside != 0 {
                boundary += 1;
            }
            best = best.min(cost[(s & !(1 << v)) as usize]);
        }
        cost[s as usize] = boundary.max(best);
    }
    Ok(cost[full as usize] as usize)
}
