//! Checks written independently of the library, used as oracles by the
//! integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use pathpebble::graph::{generate, Graph};
use pathpebble::guest::TokenLabel;
use pathpebble::pebbling::{FatFactor, TokenEmbedding};
use rand::Rng;

/// Pathwidth as vertex separation, by depth-first search over prefixes for
/// increasing `k`. Exponential; meant for at most 16 vertices.
pub fn brute_pathwidth(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    if n == 0 {
        return 0;
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| 1u32 << w).sum())
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let frontier = |s: u32| {
        (0..n)
            .filter(|&v| s >> v & 1 == 1 && nbr[v] & !s & full != 0)
            .count()
    };
    for k in 0..n {
        let mut dead = HashSet::new();
        if extend(0, full, k, &frontier, &mut dead, n) {
            return k;
        }
    }
    n - 1
}

fn extend(
    s: u32,
    full: u32,
    k: usize,
    frontier: &dyn Fn(u32) -> usize,
    dead: &mut HashSet<u32>,
    n: usize,
) -> bool {
    if s == full {
        return true;
    }
    if dead.contains(&s) {
        return false;
    }
    for v in 0..n {
        let next = s | 1 << v;
        if next != s && frontier(next) <= k && extend(next, full, k, frontier, dead, n) {
            return true;
        }
    }
    dead.insert(s);
    false
}

/// Checks bags against the definition directly and returns the width.
pub fn check_decomposition(bags: &[Vec<usize>], g: &Graph) -> Result<usize, String> {
    let sets: Vec<HashSet<usize>> = bags.iter().map(|b| b.iter().copied().collect()).collect();
    for (i, (b, s)) in bags.iter().zip(&sets).enumerate() {
        if b.len() != s.len() || b.iter().any(|&v| v >= g.n()) {
            return Err(format!("bag {i} is malformed: {b:?}"));
        }
    }
    let mut occurrences: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, b) in bags.iter().enumerate() {
        for &v in b {
            occurrences.entry(v).or_default().push(i);
        }
    }
    for v in 0..g.n() {
        let Some(idx) = occurrences.get(&v) else {
            return Err(format!("vertex {v} is in no bag"));
        };
        if idx.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(format!("bags of vertex {v} are not consecutive: {idx:?}"));
        }
    }
    for (u, v) in g.edges() {
        if !sets.iter().any(|s| s.contains(&u) && s.contains(&v)) {
            return Err(format!("edge {u}-{v} is in no bag"));
        }
    }
    Ok(bags
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
        .saturating_sub(1))
}

/// Checks that the tokens form a rooted tree and that the host paths realize
/// a subdivision of it inside `host`. With `exceeds = Some(t)`, also checks
/// that the embedded tree has pathwidth above `t` when it is small enough.
pub fn check_embedding(
    e: &TokenEmbedding,
    host: &Graph,
    exceeds: Option<u32>,
) -> Result<(), String> {
    if !e.token_host.contains_key(&TokenLabel::ROOT) {
        return Err("root token missing".into());
    }
    let mut used = HashSet::new();
    for (l, &v) in &e.token_host {
        if v >= host.n() || !used.insert(v) {
            return Err(format!("token {l} on bad or shared vertex {v}"));
        }
    }
    let want: BTreeSet<TokenLabel> = e
        .token_host
        .keys()
        .copied()
        .filter(|l| !l.is_root())
        .collect();
    let have: BTreeSet<TokenLabel> = e.edge_paths.keys().copied().collect();
    if want != have {
        return Err(format!("paths for {have:?}, tokens {want:?}"));
    }
    for (l, path) in &e.edge_paths {
        let parent = l.parent().unwrap();
        let Some(&start) = e.token_host.get(&parent) else {
            return Err(format!("token {l} has no parent token"));
        };
        let mut walk = vec![start];
        walk.extend(path);
        walk.push(e.token_host[l]);
        for w in walk.windows(2) {
            if !host.has_edge(w[0], w[1]) {
                return Err(format!("path of {l}: {}-{} is not an edge", w[0], w[1]));
            }
        }
        for &v in path {
            if !used.insert(v) {
                return Err(format!("path of {l} reuses vertex {v}"));
            }
        }
    }
    let guest_size = e.token_host.len();
    if let (Some(t), true) = (exceeds, guest_size <= 16) {
        let labels: Vec<TokenLabel> = e.token_host.keys().copied().collect();
        let edges = labels.iter().enumerate().filter_map(|(i, l)| {
            let p = l.parent()?;
            Some((labels.binary_search(&p).unwrap(), i))
        });
        let guest = Graph::from_edges(guest_size, edges).unwrap();
        let pw = brute_pathwidth(&guest);
        if pw <= t as usize {
            return Err(format!("embedded tree has pathwidth {pw}"));
        }
    }
    Ok(())
}

/// Checks `A ⊕ B = H` through the recorded vertex maps, by edge sets.
pub fn check_factorization(ff: &FatFactor, host: &Graph) -> Result<(), String> {
    let (a, b) = (&ff.factor, &ff.complement);
    let (fa, fb) = (&ff.factor_vertices, &ff.complement_vertices);
    if a.graph.n() != fa.len() || b.graph.n() != fb.len() {
        return Err("vertex maps have the wrong length".into());
    }
    let sa: HashSet<usize> = fa.iter().copied().collect();
    let sb: HashSet<usize> = fb.iter().copied().collect();
    if sa.len() != fa.len() || sb.len() != fb.len() {
        return Err("vertex maps are not injective".into());
    }
    if a.boundary.len() != b.boundary.len() {
        return Err("boundary sizes differ".into());
    }
    let boundary: HashSet<usize> = a.boundary.iter().map(|&v| fa[v]).collect();
    for (i, (&x, &y)) in a.boundary.iter().zip(&b.boundary).enumerate() {
        if fa[x] != fb[y] {
            return Err(format!(
                "label {} joins host {} and {}",
                i + 1,
                fa[x],
                fb[y]
            ));
        }
    }
    let shared: HashSet<usize> = sa.intersection(&sb).copied().collect();
    if shared != boundary {
        return Err("A and B overlap outside the boundary".into());
    }
    if sa.union(&sb).count() != host.n() || sa.union(&sb).any(|&v| v >= host.n()) {
        return Err("A and B do not cover the host".into());
    }
    let norm = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut edges: BTreeSet<(usize, usize)> =
        a.graph.edges().map(|(u, v)| norm(fa[u], fa[v])).collect();
    edges.extend(b.graph.edges().map(|(u, v)| norm(fb[u], fb[v])));
    let want: BTreeSet<(usize, usize)> = host.edges().collect();
    if edges != want {
        return Err(format!(
            "glued edge set differs from the host ({} vs {})",
            edges.len(),
            want.len()
        ));
    }
    match ff.reassemble() {
        Ok(g) if &g == host => Ok(()),
        other => Err(format!("library glue gave {other:?}")),
    }
}

/// Random host with at most 16 vertices: a random tree a third of the time,
/// otherwise random edges, at most `(t + 1) n` of them.
pub fn small_host<R: Rng>(rng: &mut R, t: u32) -> Graph {
    let n = rng.gen_range(1..=16usize);
    if rng.gen_ratio(1, 3) {
        return generate::random_tree(n, rng);
    }
    let max = (n * (n - 1) / 2).min((t as usize + 1) * n);
    let m = rng.gen_range(0..=max);
    generate::random_sparse(n, m, rng)
}
