//! Tree obstructions for pathwidth and their embeddings in complete binary
//! trees.
//!
//! Obstructions are generated bottom-up: `K_2` obstructs pathwidth 0, and an
//! obstruction for `t + 1` is a new vertex joined to one vertex of each of
//! three (not necessarily distinct) obstructions for `t`.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::canon::{bfs_order, centroids, ShapeInterner};
use super::{guest_height, GuestError, GuestTree, TokenLabel, MAX_OBSTRUCTION_T};
use crate::graph::Graph;
use crate::verify::{EmbeddingCertificate, GuestEdgePath};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionTree {
    pub graph: Graph,
    /// The tree has pathwidth `t + 1`.
    pub t: u32,
}

impl ObstructionTree {
    pub fn order(&self) -> usize {
        self.graph.n()
    }
}

/// All tree obstructions for pathwidth `t`, one per isomorphism class.
pub fn generate_obstructions(t: u32) -> Result<Vec<ObstructionTree>, GuestError> {
    generate(t, None)
}

/// Obstructions whose maximum degree is at most `max_degree`. Attaching only
/// raises degrees, so this family is closed under the generating rule.
pub fn generate_obstructions_max_degree(
    t: u32,
    max_degree: usize,
) -> Result<Vec<ObstructionTree>, GuestError> {
    generate(t, Some(max_degree))
}

/// One obstruction for `t`, built directly by the rule with every
/// attachment at a leaf. Cheap even where full generation is not.
pub fn sample_obstruction(t: u32) -> Result<ObstructionTree, GuestError> {
    if t > MAX_OBSTRUCTION_T {
        return Err(GuestError::ObstructionTooLarge(t));
    }
    let mut g = Graph::from_edges(2, [(0, 1)]).unwrap();
    for _ in 0..t {
        // the last vertex is always a leaf
        let leaf = g.n() - 1;
        g = attach(std::slice::from_ref(&g), [(0, leaf); 3]);
    }
    Ok(ObstructionTree { graph: g, t })
}

fn generate(t: u32, max_degree: Option<usize>) -> Result<Vec<ObstructionTree>, GuestError> {
    if t > MAX_OBSTRUCTION_T {
        return Err(GuestError::ObstructionTooLarge(t));
    }
    let mut level = vec![Graph::from_edges(2, [(0, 1)]).unwrap()];
    for _ in 0..t {
        level = next_level(&level, max_degree);
    }
    Ok(level
        .into_iter()
        .map(|graph| ObstructionTree { graph, t })
        .collect())
}

fn next_level(prev: &[Graph], max_degree: Option<usize>) -> Vec<Graph> {
    let mut shapes = ShapeInterner::default();
    // one representative (tree, vertex) per rooted shape
    let mut seen = HashSet::new();
    let mut orbits: Vec<(usize, usize)> = Vec::new();
    for (i, g) in prev.iter().enumerate() {
        for v in 0..g.n() {
            if max_degree.is_some_and(|d| g.degree(v) + 1 > d) {
                continue;
            }
            if seen.insert(shapes.rooted(g, v)) {
                orbits.push((i, v));
            }
        }
    }
    let mut keys = HashSet::new();
    let mut out = Vec::new();
    let k = orbits.len();
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                let tree = attach(prev, [orbits[a], orbits[b], orbits[c]]);
                if keys.insert(free_key(&tree, &mut shapes)) {
                    out.push(tree);
                }
            }
        }
    }
    out
}

/// New vertex 0 joined to the chosen vertex of each part.
fn attach(prev: &[Graph], parts: [(usize, usize); 3]) -> Graph {
    let n = 1 + parts.iter().map(|&(i, _)| prev[i].n()).sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut offset = 1;
    for (i, v) in parts {
        let g = &prev[i];
        edges.extend(g.edges().map(|(x, y)| (x + offset, y + offset)));
        edges.push((0, v + offset));
        offset += g.n();
    }
    Graph::from_edges(n, edges).unwrap()
}

fn free_key(g: &Graph, shapes: &mut ShapeInterner) -> (u32, u32) {
    let mut ids: Vec<u32> = centroids(g)
        .into_iter()
        .map(|c| shapes.rooted(g, c))
        .collect();
    ids.sort_unstable();
    (ids[0], ids.get(1).copied().unwrap_or(u32::MAX))
}

/// An obstruction placed inside `B_{2t+2}`: the flagged subtree is the image
/// of the obstruction, plus one subdivision token when the root sits on an
/// edge midpoint.
#[derive(Debug, Clone)]
pub struct EmbeddedObstruction {
    pub obstruction: ObstructionTree,
    pub guest: GuestTree,
    /// Token carrying each obstruction vertex.
    pub vertex_label: Vec<TokenLabel>,
    /// Obstruction edge subdivided by the root token, if any.
    pub subdivided_edge: Option<(usize, usize)>,
    /// Height of the flagged subtree.
    pub depth: u32,
}

impl EmbeddedObstruction {
    /// The flagged subtree as a graph, with a certificate embedding the
    /// obstruction into it.
    pub fn certificate(&self) -> (Graph, Vec<TokenLabel>, EmbeddingCertificate) {
        let (tree, labels) = self.guest.flagged_tree();
        let id = |l: TokenLabel| labels.binary_search(&l).expect("label is flagged");
        let token_host: Vec<usize> = self.vertex_label.iter().map(|&l| id(l)).collect();
        let edge_paths = self
            .obstruction
            .graph
            .edges()
            .map(|(a, b)| {
                let internal = if self.subdivided_edge == Some((a, b)) {
                    vec![id(TokenLabel::ROOT)]
                } else {
                    Vec::new()
                };
                GuestEdgePath {
                    edge: (a, b),
                    internal,
                }
            })
            .collect();
        (
            tree,
            labels,
            EmbeddingCertificate {
                token_host,
                edge_paths,
            },
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Root {
    Vertex(usize),
    Midpoint(usize, usize),
}

fn levels_from(g: &Graph, root: usize, skip: usize) -> u32 {
    let (order, parent) = bfs_order(g, root, skip);
    let mut depth = vec![0u32; g.n()];
    let mut best = 0;
    for &v in &order {
        depth[v] = if v == root { 1 } else { depth[parent[v]] + 1 };
        best = best.max(depth[v]);
    }
    best
}

/// Places `obs` in the complete binary tree of height `2t + 2` by trying
/// every admissible root (a vertex of degree at most 2, or the midpoint of an
/// edge) and keeping the shallowest.
pub fn embed_in_binary_tree(obs: &ObstructionTree) -> Result<EmbeddedObstruction, GuestError> {
    let g = &obs.graph;
    let cap = guest_height(obs.t);
    if !g.is_tree() {
        return Err(GuestError::NotATree);
    }
    let max_deg = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    if max_deg > 3 {
        return Err(GuestError::NoEmbedding { depth: None, cap });
    }
    let mut best: Option<(u32, Root)> = None;
    let mut consider = |depth: u32, root: Root| {
        if best.is_none_or(|b| (depth, root) < b) {
            best = Some((depth, root));
        }
    };
    for v in 0..g.n() {
        if g.degree(v) <= 2 {
            consider(levels_from(g, v, usize::MAX), Root::Vertex(v));
        }
    }
    for (a, b) in g.edges() {
        let depth = 1 + levels_from(g, a, b).max(levels_from(g, b, a));
        consider(depth, Root::Midpoint(a, b));
    }
    let (depth, root) = best.expect("a tree has a vertex of degree at most 2");
    if depth > cap {
        return Err(GuestError::NoEmbedding {
            depth: Some(depth),
            cap,
        });
    }

    let mut vertex_label = vec![TokenLabel::ROOT; g.n()];
    let mut flagged = vec![TokenLabel::ROOT];
    let subdivided_edge = match root {
        Root::Vertex(v) => {
            label_below(
                g,
                v,
                usize::MAX,
                TokenLabel::ROOT,
                &mut vertex_label,
                &mut flagged,
            );
            None
        }
        Root::Midpoint(a, b) => {
            let ha = levels_from(g, a, b);
            let hb = levels_from(g, b, a);
            let (first, second) = if hb > ha { (b, a) } else { (a, b) };
            for (bit, v, other) in [(true, first, second), (false, second, first)] {
                let l = TokenLabel::ROOT.child(bit);
                flagged.push(l);
                label_below(g, v, other, l, &mut vertex_label, &mut flagged);
            }
            Some((a, b))
        }
    };
    let guest = GuestTree::with_flags(cap, flagged)?;
    Ok(EmbeddedObstruction {
        obstruction: obs.clone(),
        guest,
        vertex_label,
        subdivided_edge,
        depth,
    })
}

/// Labels the subtree hanging from `root` (away from `skip`); the deeper
/// child goes left (`·1`), ties broken by vertex id.
fn label_below(
    g: &Graph,
    root: usize,
    skip: usize,
    root_label: TokenLabel,
    vertex_label: &mut [TokenLabel],
    flagged: &mut Vec<TokenLabel>,
) {
    let (order, parent) = bfs_order(g, root, skip);
    let mut height = vec![1u32; g.n()];
    for &v in order.iter().rev() {
        if v != root {
            height[parent[v]] = height[parent[v]].max(height[v] + 1);
        }
    }
    vertex_label[root] = root_label;
    for &v in &order {
        let mut kids: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| parent[w] == v)
            .collect();
        kids.sort_by_key(|&w| (std::cmp::Reverse(height[w]), w));
        debug_assert!(kids.len() <= 2);
        for (w, bit) in kids.into_iter().zip([true, false]) {
            let l = vertex_label[v].child(bit);
            vertex_label[w] = l;
            flagged.push(l);
        }
    }
}

/// The guest a run uses by default for `t`: among embeddable obstructions,
/// the one with the shallowest flagged subtree (then fewest tokens, then
/// generation order).
pub fn default_guest(t: u32) -> Result<&'static EmbeddedObstruction, GuestError> {
    static CACHE: [OnceLock<Result<EmbeddedObstruction, GuestError>>;
        MAX_OBSTRUCTION_T as usize + 1] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    if t > MAX_OBSTRUCTION_T {
        return Err(GuestError::ObstructionTooLarge(t));
    }
    CACHE[t as usize]
        .get_or_init(|| {
            let mut best: Option<EmbeddedObstruction> = None;
            for obs in generate_obstructions_max_degree(t, 3)? {
                let Ok(e) = embed_in_binary_tree(&obs) else {
                    continue;
                };
                let key = (e.depth, e.guest.flagged_count());
                if best
                    .as_ref()
                    .is_none_or(|b| key < (b.depth, b.guest.flagged_count()))
                {
                    best = Some(e);
                }
            }
            best.ok_or(GuestError::NoEmbedding {
                depth: None,
                cap: guest_height(t),
            })
        })
        .as_ref()
        .map_err(Clone::clone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guest::canon::canonical_string;
    use crate::verify::validate_embedding;

    fn l(s: &str) -> TokenLabel {
        s.parse().unwrap()
    }

    /// Spider with three legs of length two.
    fn spider() -> Graph {
        Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn t0_is_k2() {
        let obs = generate_obstructions(0).unwrap();
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0].graph, Graph::from_edges(2, [(0, 1)]).unwrap());
    }

    #[test]
    fn t1_is_the_spider() {
        let obs = generate_obstructions(1).unwrap();
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0].order(), 7);
        assert_eq!(canonical_string(&obs[0].graph), canonical_string(&spider()));
    }

    #[test]
    fn orders_follow_the_closed_form() {
        for t in 0..=2 {
            for o in generate_obstructions(t).unwrap() {
                assert_eq!(o.order() as u64, crate::guest::obstruction_order(t));
                assert!(o.graph.is_tree());
            }
        }
    }

    #[test]
    fn t2_members_are_pairwise_non_isomorphic() {
        let obs = generate_obstructions(2).unwrap();
        let forms: HashSet<String> = obs.iter().map(|o| canonical_string(&o.graph)).collect();
        assert_eq!(forms.len(), obs.len());
    }

    #[test]
    fn too_large_t_rejected() {
        assert_eq!(
            generate_obstructions(4).unwrap_err(),
            GuestError::ObstructionTooLarge(4)
        );
    }

    #[test]
    fn k2_embeds_as_root_and_child() {
        let obs = &generate_obstructions(0).unwrap()[0];
        let e = embed_in_binary_tree(obs).unwrap();
        assert_eq!(e.guest.height(), 2);
        assert_eq!(e.guest.flagged(), vec![l("-"), l("1")]);
    }

    #[test]
    fn spider_embeds_in_b4_without_subdivision() {
        let obs = &generate_obstructions(1).unwrap()[0];
        let e = embed_in_binary_tree(obs).unwrap();
        assert_eq!(e.guest.height(), 4);
        assert_eq!(e.guest.flagged_count(), 7);
        assert_eq!(e.subdivided_edge, None);
        let (tree, _, cert) = e.certificate();
        assert!(validate_embedding(&cert, &obs.graph, &tree).is_ok());
        // the three legs of the spider hang off distinct neighbors of its center
        let center = (0..7).find(|&v| obs.graph.degree(v) == 3).unwrap();
        let mut legs: Vec<TokenLabel> = obs
            .graph
            .neighbors(center)
            .iter()
            .map(|&v| e.vertex_label[v])
            .collect();
        legs.sort();
        legs.dedup();
        assert_eq!(legs.len(), 3);
    }

    #[test]
    fn degree_four_obstructions_do_not_embed() {
        let obs = generate_obstructions(2).unwrap();
        let mut embeddable = 0;
        for o in &obs {
            let max_deg = (0..o.order()).map(|v| o.graph.degree(v)).max().unwrap();
            match embed_in_binary_tree(o) {
                Ok(e) => {
                    embeddable += 1;
                    assert!(e.depth <= 6);
                    let (tree, _, cert) = e.certificate();
                    assert!(validate_embedding(&cert, &o.graph, &tree).is_ok());
                }
                Err(GuestError::NoEmbedding { depth, .. }) => {
                    assert!(max_deg > 3 || depth.is_some_and(|d| d > 6))
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(embeddable > 0);
    }

    #[test]
    fn default_guests_exist_and_fit() {
        for t in 0..=2 {
            let e = default_guest(t).unwrap();
            assert_eq!(e.guest.height(), 2 * t + 2);
            assert!(e.depth <= 2 * t + 2);
            let (tree, _, cert) = e.certificate();
            assert!(validate_embedding(&cert, &e.obstruction.graph, &tree).is_ok());
        }
    }

    #[test]
    fn samples_are_members() {
        for t in 0..=2 {
            let sample = sample_obstruction(t).unwrap();
            let members: Vec<String> = generate_obstructions(t)
                .unwrap()
                .iter()
                .map(|o| canonical_string(&o.graph))
                .collect();
            assert!(members.contains(&canonical_string(&sample.graph)));
        }
        let s3 = sample_obstruction(3).unwrap();
        assert!(s3.graph.is_tree());
        assert_eq!(s3.order(), 67);
    }
}
