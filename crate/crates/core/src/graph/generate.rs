//! Graph families used by tests, the bench harness and the self-test.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `K_{1,leaves}` with the center at vertex `center`.
pub fn star(leaves: usize, center: usize) -> Graph {
    assert!(center <= leaves);
    let n = leaves + 1;
    Graph::from_edges(n, (0..n).filter(|&v| v != center).map(|v| (center, v))).unwrap()
}

/// Complete binary tree of height `h` (2^h - 1 vertices); vertex `i` has
/// children `2i + 1` and `2i + 2`.
pub fn complete_binary_tree(h: u32) -> Graph {
    let n = (1usize << h) - 1;
    Graph::from_edges(n, (1..n).map(|i| ((i - 1) / 2, i))).unwrap()
}

/// A path of `spine` vertices where each spine vertex gets `0..=max_legs`
/// pendant leaves.
pub fn caterpillar<R: Rng>(spine: usize, max_legs: usize, rng: &mut R) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut next = spine;
    for s in 0..spine {
        for _ in 0..rng.gen_range(0..=max_legs) {
            edges.push((s, next));
            next += 1;
        }
    }
    Graph::from_edges(next, edges).unwrap()
}

/// Random recursive tree with shuffled vertex ids.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let edges: Vec<_> = (1..n).map(|i| (ids[rng.gen_range(0..i)], ids[i])).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// A `rows x cols` grid; pathwidth is `min(rows, cols)`.
pub fn grid_strip(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).unwrap()
}

/// Uniform random graph with exactly `m` edges.
pub fn random_sparse<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    let max = n * n.saturating_sub(1) / 2;
    assert!(m <= max, "{m} edges do not fit on {n} vertices");
    let mut set = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    if m * 2 > max {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        all.shuffle(rng);
        all.truncate(m);
        return Graph::from_edges(n, all).unwrap();
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && set.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
