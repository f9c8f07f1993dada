//! Canonical forms for trees (AHU encoding).

use std::collections::HashMap;

use crate::graph::Graph;

/// Rooted canonical string: `(` + sorted child strings + `)`.
pub fn rooted_string(g: &Graph, root: usize) -> String {
    let (order, parent) = bfs_order(g, root, usize::MAX);
    let mut code: Vec<String> = vec![String::new(); g.n()];
    for &v in order.iter().rev() {
        let mut kids: Vec<String> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent[v])
            .map(|&w| std::mem::take(&mut code[w]))
            .collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        code[v] = s;
    }
    std::mem::take(&mut code[root])
}

/// Canonical string of a free tree: the smallest rooted string over its
/// centroids. Two trees are isomorphic iff their strings are equal.
pub fn canonical_string(g: &Graph) -> String {
    assert!(g.is_tree(), "canonical_string expects a tree");
    centroids(g)
        .into_iter()
        .map(|c| rooted_string(g, c))
        .min()
        .unwrap()
}

/// The one or two vertices minimizing the largest remaining component.
pub fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let (order, parent) = bfs_order(g, 0, usize::MAX);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let worst: Vec<usize> = (0..n)
        .map(|v| {
            let mut w = n - size[v];
            for &c in g.neighbors(v) {
                if c != parent[v] {
                    w = w.max(size[c]);
                }
            }
            w
        })
        .collect();
    let best = *worst.iter().min().unwrap();
    (0..n).filter(|&v| worst[v] == best).collect()
}

pub(crate) fn bfs_order(g: &Graph, root: usize, skip: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    seen[root] = true;
    if skip != usize::MAX {
        seen[skip] = true;
    }
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    (order, parent)
}

/// Interns rooted shapes as small integers so that many trees can be
/// compared without building strings.
#[derive(Default)]
pub(crate) struct ShapeInterner {
    ids: HashMap<Vec<u32>, u32>,
}

impl ShapeInterner {
    pub fn id(&mut self, mut children: Vec<u32>) -> u32 {
        children.sort_unstable();
        let next = self.ids.len() as u32;
        *self.ids.entry(children).or_insert(next)
    }

    /// Shape id of every vertex's subtree when `g` hangs from `root`.
    pub fn rooted(&mut self, g: &Graph, root: usize) -> u32 {
        let (order, parent) = bfs_order(g, root, usize::MAX);
        let mut id = vec![0u32; g.n()];
        for &v in order.iter().rev() {
            let kids: Vec<u32> = g
                .neighbors(v)
                .iter()
                .filter(|&&w| w != parent[v])
                .map(|&w| id[w])
                .collect();
            id[v] = self.id(kids);
        }
        id[root]
    }
}
