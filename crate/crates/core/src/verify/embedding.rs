use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Host path for one guest edge `(a, b)`: the host vertices strictly between
/// the hosts of `a` and `b`, listed from `a`'s side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuestEdgePath {
    pub edge: (usize, usize),
    pub internal: Vec<usize>,
}

/// A homeomorphic embedding of a guest graph in a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    /// Host vertex of each guest vertex.
    pub token_host: Vec<usize>,
    pub edge_paths: Vec<GuestEdgePath>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum EmbeddingViolation {
    WrongVertexCount {
        expected: usize,
        found: usize,
    },
    HostOutOfRange {
        vertex: usize,
    },
    NotInjective {
        guest_a: usize,
        guest_b: usize,
        host: usize,
    },
    NotAGuestEdge {
        a: usize,
        b: usize,
    },
    DuplicatePath {
        a: usize,
        b: usize,
    },
    MissingPath {
        a: usize,
        b: usize,
    },
    BrokenPath {
        a: usize,
        b: usize,
        from: usize,
        to: usize,
    },
    /// A host vertex is used twice across paths or by a path and a token.
    NotDisjoint {
        host: usize,
    },
}

/// Checks that `c` maps `guest` into `host` injectively with every guest edge
/// realized by a host path, all paths internally disjoint from each other and
/// from the images of guest vertices.
pub fn validate_embedding(
    c: &EmbeddingCertificate,
    guest: &Graph,
    host: &Graph,
) -> Result<(), EmbeddingViolation> {
    use EmbeddingViolation::*;
    if c.token_host.len() != guest.n() {
        return Err(WrongVertexCount {
            expected: guest.n(),
            found: c.token_host.len(),
        });
    }
    // owner of each used host vertex: guest vertex id, or usize::MAX for a path
    let mut used: HashMap<usize, usize> = HashMap::new();
    for (g, &h) in c.token_host.iter().enumerate() {
        if h >= host.n() {
            return Err(HostOutOfRange { vertex: h });
        }
        if let Some(&other) = used.get(&h) {
            return Err(NotInjective {
                guest_a: other,
                guest_b: g,
                host: h,
            });
        }
        used.insert(h, g);
    }
    let mut covered = HashSet::new();
    for p in &c.edge_paths {
        let (a, b) = p.edge;
        if a >= guest.n() || b >= guest.n() || !guest.has_edge(a, b) {
            return Err(NotAGuestEdge { a, b });
        }
        if !covered.insert((a.min(b), a.max(b))) {
            return Err(DuplicatePath { a, b });
        }
        let mut prev = c.token_host[a];
        for &h in p.internal.iter().chain(std::iter::once(&c.token_host[b])) {
            if h >= host.n() {
                return Err(HostOutOfRange { vertex: h });
            }
            if !host.has_edge(prev, h) {
                return Err(BrokenPath {
                    a,
                    b,
                    from: prev,
                    to: h,
                });
            }
            prev = h;
        }
        for &h in &p.internal {
            if used.insert(h, usize::MAX).is_some() {
                return Err(NotDisjoint { host: h });
            }
        }
    }
    if let Some((a, b)) = guest.edges().find(|e| !covered.contains(e)) {
        return Err(MissingPath { a, b });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn direct(guest: &Graph, map: Vec<usize>) -> EmbeddingCertificate {
        EmbeddingCertificate {
            token_host: map,
            edge_paths: guest
                .edges()
                .map(|e| GuestEdgePath {
                    edge: e,
                    internal: vec![],
                })
                .collect(),
        }
    }

    #[test]
    fn k2_on_a_host_edge() {
        let guest = generate::path(2);
        let host = generate::cycle(5);
        assert_eq!(
            validate_embedding(&direct(&guest, vec![3, 4]), &guest, &host),
            Ok(())
        );
    }

    #[test]
    fn star_identity() {
        let s = generate::star(3, 0);
        assert_eq!(
            validate_embedding(&direct(&s, vec![0, 1, 2, 3]), &s, &s),
            Ok(())
        );
    }

    #[test]
    fn subdivided_star() {
        // K_{1,3} into a spider with legs of length 2 via the middle vertices
        let guest = generate::star(3, 0);
        let host = Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let c = EmbeddingCertificate {
            token_host: vec![0, 2, 4, 6],
            edge_paths: vec![
                GuestEdgePath {
                    edge: (0, 1),
                    internal: vec![1],
                },
                GuestEdgePath {
                    edge: (0, 2),
                    internal: vec![3],
                },
                GuestEdgePath {
                    edge: (3, 0),
                    internal: vec![5],
                },
            ],
        };
        assert_eq!(validate_embedding(&c, &guest, &host), Ok(()));
    }

    #[test]
    fn shared_internal_vertex() {
        // two guest edges routed through host vertex 1
        let guest = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let host = Graph::from_edges(5, [(0, 1), (1, 2), (3, 1), (1, 4)]).unwrap();
        let c = EmbeddingCertificate {
            token_host: vec![0, 2, 3, 4],
            edge_paths: vec![
                GuestEdgePath {
                    edge: (0, 1),
                    internal: vec![1],
                },
                GuestEdgePath {
                    edge: (2, 3),
                    internal: vec![1],
                },
            ],
        };
        assert_eq!(
            validate_embedding(&c, &guest, &host),
            Err(EmbeddingViolation::NotDisjoint { host: 1 })
        );
    }

    #[test]
    fn other_violations() {
        let guest = generate::path(3);
        let host = generate::path(4);
        assert!(matches!(
            validate_embedding(&direct(&guest, vec![0, 1, 1]), &guest, &host),
            Err(EmbeddingViolation::NotInjective { host: 1, .. })
        ));
        assert_eq!(
            validate_embedding(&direct(&guest, vec![0, 1, 3]), &guest, &host),
            Err(EmbeddingViolation::BrokenPath {
                a: 1,
                b: 2,
                from: 1,
                to: 3
            })
        );
        let mut c = direct(&guest, vec![0, 1, 2]);
        c.edge_paths.pop();
        assert_eq!(
            validate_embedding(&c, &guest, &host),
            Err(EmbeddingViolation::MissingPath { a: 1, b: 2 })
        );
        // edge (1, 2) subdivided once
        let c = EmbeddingCertificate {
            token_host: vec![0, 1, 3],
            edge_paths: vec![
                GuestEdgePath {
                    edge: (0, 1),
                    internal: vec![],
                },
                GuestEdgePath {
                    edge: (1, 2),
                    internal: vec![2],
                },
            ],
        };
        assert_eq!(validate_embedding(&c, &guest, &host), Ok(()));
        let c = EmbeddingCertificate {
            token_host: vec![1, 2, 3],
            edge_paths: vec![
                GuestEdgePath {
                    edge: (0, 1),
                    internal: vec![],
                },
                GuestEdgePath {
                    edge: (1, 2),
                    internal: vec![],
                },
                GuestEdgePath {
                    edge: (0, 2),
                    internal: vec![],
                },
            ],
        };
        assert_eq!(
            validate_embedding(&c, &guest, &host),
            Err(EmbeddingViolation::NotAGuestEdge { a: 0, b: 2 })
        );
        let c = EmbeddingCertificate {
            token_host: vec![0, 2, 3],
            edge_paths: vec![
                GuestEdgePath {
                    edge: (0, 1),
                    internal: vec![1],
                },
                GuestEdgePath {
                    edge: (1, 2),
                    internal: vec![],
                },
            ],
        };
        assert_eq!(validate_embedding(&c, &guest, &host), Ok(()));
        let c = EmbeddingCertificate {
            token_host: vec![0, 1, 3],
            edge_paths: vec![
                GuestEdgePath {
                    edge: (0, 1),
                    internal: vec![],
                },
                GuestEdgePath {
                    edge: (1, 2),
                    internal: vec![0, 1, 2],
                },
            ],
        };
        assert_eq!(
            validate_embedding(&c, &guest, &host),
            Err(EmbeddingViolation::NotDisjoint { host: 0 })
        );
    }
}
