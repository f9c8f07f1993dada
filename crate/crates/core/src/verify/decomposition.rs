use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// An ordered sequence of bags over the vertices of some graph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        PathDecomposition { bags }
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// The first condition a decomposition fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum DecompositionViolation {
    VertexOutOfRange {
        bag: usize,
        vertex: usize,
    },
    RepeatedInBag {
        bag: usize,
        vertex: usize,
    },
    MissingVertex {
        vertex: usize,
    },
    /// `vertex` is in bags `first` and `last` but not in `gap` between them.
    Interpolation {
        vertex: usize,
        first: usize,
        gap: usize,
        last: usize,
    },
    UncoveredEdge {
        u: usize,
        v: usize,
    },
}

/// Checks the three path-decomposition conditions (bags cover the vertices,
/// every edge sits in a bag, each vertex occupies a contiguous run of bags)
/// and returns the width or the first violation.
///
/// Contiguity is checked before edge coverage, so a vertex whose bags are
/// split is reported as such even if that also leaves an edge uncovered.
pub fn validate_decomposition(
    d: &PathDecomposition,
    g: &Graph,
) -> Result<usize, DecompositionViolation> {
    let n = g.n();
    // first and last bag holding each vertex, and the last bag seen
    let mut first = vec![usize::MAX; n];
    let mut last = vec![usize::MAX; n];
    for (i, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(DecompositionViolation::VertexOutOfRange { bag: i, vertex: v });
            }
            if last[v] == i {
                return Err(DecompositionViolation::RepeatedInBag { bag: i, vertex: v });
            }
            if first[v] == usize::MAX {
                first[v] = i;
            }
            last[v] = i;
        }
    }
    if let Some(v) = (0..n).find(|&v| first[v] == usize::MAX) {
        return Err(DecompositionViolation::MissingVertex { vertex: v });
    }
    // contiguous iff the number of bags holding v equals last - first + 1
    let mut count = vec![0usize; n];
    for bag in &d.bags {
        for &v in bag {
            count[v] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| count[v] != last[v] - first[v] + 1) {
        let gap = (first[v]..=last[v])
            .find(|&i| !d.bags[i].contains(&v))
            .expect("a missing bag exists");
        return Err(DecompositionViolation::Interpolation {
            vertex: v,
            first: first[v],
            gap,
            last: last[v],
        });
    }
    // with contiguous intervals, an edge is covered iff the intervals meet
    for (u, v) in g.edges() {
        if first[u].max(first[v]) > last[u].min(last[v]) {
            return Err(DecompositionViolation::UncoveredEdge { u, v });
        }
    }
    Ok(d.width())
}
