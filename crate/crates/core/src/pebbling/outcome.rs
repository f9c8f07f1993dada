use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::trace::TraceEvent;
use crate::graph::{glue_with_map, BoundaryGraph, Graph, GraphError};
use crate::guest::TokenLabel;
use crate::verify::{EmbeddingCertificate, GuestEdgePath, PathDecomposition};

/// Result of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    /// Every vertex turned red; the snapshots decompose the whole host.
    FullDecomposition { decomposition: PathDecomposition },
    /// The flagged guest was embedded.
    FatFactor(Box<FatFactor>),
    /// More than `t n` edges, so the pathwidth exceeds `t` outright.
    #[serde(rename_all = "camelCase")]
    EdgeBoundReject { edge_count: usize, bound: u64 },
}

impl Outcome {
    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::FullDecomposition { .. } => "full-decomposition",
            Outcome::FatFactor(_) => "fat-factor",
            Outcome::EdgeBoundReject { .. } => "edge-bound-reject",
        }
    }

    /// Exit status used by the command line: 0, 2 or 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::FullDecomposition { .. } => 0,
            Outcome::FatFactor(_) => 2,
            Outcome::EdgeBoundReject { .. } => 3,
        }
    }
}

/// The red part `A` of the host with the final bag as boundary, the rest
/// `B`, a decomposition of `A` and an embedding of the guest.
///
/// `A` and `B` use local ids; `factor_vertices[i]` and
/// `complement_vertices[i]` give the host vertex behind local id `i`. Both
/// boundaries list the final bag in increasing host order. The decomposition
/// uses `A`'s ids, the certificate uses host ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FatFactor {
    pub factor: BoundaryGraph,
    pub factor_vertices: Vec<usize>,
    pub complement: BoundaryGraph,
    pub complement_vertices: Vec<usize>,
    pub decomposition: PathDecomposition,
    pub certificate: TokenEmbedding,
}

impl FatFactor {
    /// `A ⊕ B` renamed back to host ids.
    pub fn reassemble(&self) -> Result<Graph, GraphError> {
        let (glued, map) = glue_with_map(&self.factor, &self.complement)?;
        let mut perm = vec![usize::MAX; glued.n()];
        for (v, &g) in map.from_a.iter().enumerate() {
            perm[g] = self.factor_vertices[v];
        }
        for (v, &g) in map.from_b.iter().enumerate() {
            perm[g] = self.complement_vertices[v];
        }
        Ok(glued.relabel(&perm))
    }
}

/// Host vertex of each embedded token, and for each non-root token the host
/// vertices strictly between its parent's host and its own.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TokenEmbedding {
    pub token_host: BTreeMap<TokenLabel, usize>,
    pub edge_paths: BTreeMap<TokenLabel, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("token {0} has no embedded parent")]
    Orphan(TokenLabel),
    #[error("path given for token {0}, which is not embedded")]
    UnknownToken(TokenLabel),
    #[error("path given for the root")]
    RootPath,
}

impl TokenEmbedding {
    /// The embedded guest tree (vertex `i` is `labels[i]`, in lexicographic
    /// order) and the certificate in the form the validator takes. Missing
    /// paths are left out so the validator reports them.
    pub fn to_certificate(
        &self,
    ) -> Result<(Graph, Vec<TokenLabel>, EmbeddingCertificate), CertificateError> {
        let labels: Vec<TokenLabel> = self.token_host.keys().copied().collect();
        let id = |l: &TokenLabel| labels.binary_search(l).ok();
        let mut edges = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(p) = l.parent() {
                edges.push((id(&p).ok_or(CertificateError::Orphan(*l))?, i));
            }
        }
        let guest = Graph::from_edges(labels.len(), edges).expect("one edge per non-root token");
        let mut edge_paths = Vec::new();
        for (l, path) in &self.edge_paths {
            let child = id(l).ok_or(CertificateError::UnknownToken(*l))?;
            let parent = l.parent().ok_or(CertificateError::RootPath)?;
            edge_paths.push(GuestEdgePath {
                edge: (id(&parent).expect("parents are embedded"), child),
                internal: path.clone(),
            });
        }
        let certificate = EmbeddingCertificate {
            token_host: self.token_host.values().copied().collect(),
            edge_paths,
        };
        Ok((guest, labels, certificate))
    }
}

/// Counters from one run.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunStats {
    pub n: usize,
    pub m: usize,
    pub t: u32,
    /// `f(t)`.
    pub f: u64,
    /// Size of the flagged guest at the end of the run.
    pub guest_tokens: usize,
    pub touches: u64,
    /// `2|E| + |V|`.
    pub touch_bound: u64,
    pub snapshots: usize,
    pub removals: usize,
    pub root_placements: usize,
    /// Largest snapshot minus one.
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub outcome: Outcome,
    pub stats: RunStats,
    /// Snapshot bags in host ids (empty for an edge-bound reject).
    pub history: Vec<Vec<usize>>,
    pub trace: Vec<TraceEvent>,
}

impl RunReport {
    pub fn to_json(&self) -> OutcomeReport {
        OutcomeReport {
            outcome: self.outcome.clone(),
            stats: self.stats.clone(),
        }
    }
}

/// What the command line prints: the outcome fields with a `stats` object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeReport {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub stats: RunStats,
}
