//! Simple undirected graphs, boundaried graphs and the glue operator.

pub mod generate;
pub mod io;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use io::{read_graph, write_graph, Format, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("boundary label {label} maps to vertex {vertex} outside 0..{n}")]
    BoundaryOutOfRange {
        label: usize,
        vertex: usize,
        n: usize,
    },
    #[error("boundary vertex {0} appears under two labels")]
    BoundaryRepeated(usize),
    #[error("boundary sizes differ: {0} vs {1}")]
    BoundaryMismatch(usize, usize),
}

/// A finite simple undirected graph on the dense vertex set `0..n`.
///
/// Adjacency lists are kept sorted, so two graphs with the same vertex count
/// and edge set compare equal.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints. Endpoint order within a pair does not matter.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Like [`Graph::from_edges`] but merges parallel edges silently.
    pub fn from_edges_merged<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Self::from_edges(n, set)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj, m }
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation of a simple graph is simple")
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m + 1 == self.n() && self.components() == 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// A graph with boundary labels `1..=k`; `boundary[i]` is the vertex carrying
/// label `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryGraph {
    pub graph: Graph,
    pub boundary: Vec<usize>,
}

impl BoundaryGraph {
    pub fn new(graph: Graph, boundary: Vec<usize>) -> Result<Self, GraphError> {
        let mut seen = vec![false; graph.n()];
        for (i, &v) in boundary.iter().enumerate() {
            if v >= graph.n() {
                return Err(GraphError::BoundaryOutOfRange {
                    label: i + 1,
                    vertex: v,
                    n: graph.n(),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::BoundaryRepeated(v));
            }
        }
        Ok(BoundaryGraph { graph, boundary })
    }

    pub fn boundary_size(&self) -> usize {
        self.boundary.len()
    }
}

/// Where each vertex of a glued graph came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueMap {
    /// `from_a[v]` is the glued id of `a`'s vertex `v` (always `v`).
    pub from_a: Vec<usize>,
    /// `from_b[v]` is the glued id of `b`'s vertex `v`.
    pub from_b: Vec<usize>,
}

/// Glues two boundaried graphs by identifying equal boundary labels.
///
/// Vertex ids of `a` are kept; the non-boundary vertices of `b` follow in
/// ascending order. Parallel edges produced by the identification are merged.
pub fn glue(a: &BoundaryGraph, b: &BoundaryGraph) -> Result<Graph, GraphError> {
    glue_with_map(a, b).map(|(g, _)| g)
}

pub fn glue_with_map(a: &BoundaryGraph, b: &BoundaryGraph) -> Result<(Graph, GlueMap), GraphError> {
    if a.boundary_size() != b.boundary_size() {
        return Err(GraphError::BoundaryMismatch(
            a.boundary_size(),
            b.boundary_size(),
        ));
    }
    let na = a.graph.n();
    let mut from_b = vec![usize::MAX; b.graph.n()];
    for (i, &v) in b.boundary.iter().enumerate() {
        from_b[v] = a.boundary[i];
    }
    let mut next = na;
    for slot in from_b.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let edges = a
        .graph
        .edges()
        .chain(b.graph.edges().map(|(u, v)| (from_b[u], from_b[v])));
    let g = Graph::from_edges_merged(next, edges)?;
    Ok((
        g,
        GlueMap {
            from_a: (0..na).collect(),
            from_b,
        },
    ))
}
