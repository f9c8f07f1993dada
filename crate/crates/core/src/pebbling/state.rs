use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::trace::TraceEvent;
use super::{RelabelMode, Strategy};
use crate::graph::Graph;
use crate::guest::{GuestTree, TokenLabel};

/// What happened to the tree of placed tokens when a token was removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Removal {
    /// The only tokened child moved up into the removed slot; the removed
    /// vertex now subdivides the edge to the parent.
    Subdivided { child: TokenLabel },
    /// The removed token's unflagged sibling subtree took over its slot.
    Shifted { sibling: TokenLabel },
    /// Nothing hung below the removed token.
    Dropped,
}

/// Live state of one pebbling run over a host graph.
///
/// Vertices start blue and turn red, permanently, when a token is placed on
/// them. Tokens only move by relabeling; a token leaves the host only when
/// every neighbor of its vertex is red.
pub struct PebbleState<'h> {
    host: &'h Graph,
    guest: GuestTree,
    relabel: RelabelMode,
    placed: BTreeMap<TokenLabel, usize>,
    token_at: Vec<Option<TokenLabel>>,
    red: Vec<bool>,
    // next unexamined adjacency entry per vertex
    cursor: Vec<usize>,
    // host vertices strictly between the parent's vertex and the token's
    paths: HashMap<TokenLabel, Vec<usize>>,
    history: Vec<Vec<usize>>,
    touches: u64,
    blue_left: usize,
    scan_order: Option<Vec<usize>>,
    scan_pos: usize,
    // tokened vertices that may have a placeable child
    worklist: Vec<usize>,
    flagged_placed: usize,
    root_placements: usize,
    removals: usize,
    trace: Option<Vec<TraceEvent>>,
}

impl<'h> PebbleState<'h> {
    pub fn new(host: &'h Graph, guest: GuestTree, relabel: RelabelMode) -> Self {
        let n = host.n();
        PebbleState {
            host,
            guest,
            relabel,
            placed: BTreeMap::new(),
            token_at: vec![None; n],
            red: vec![false; n],
            cursor: vec![0; n],
            paths: HashMap::new(),
            history: Vec::new(),
            touches: 0,
            blue_left: n,
            scan_order: None,
            scan_pos: 0,
            worklist: Vec::new(),
            flagged_placed: 0,
            root_placements: 0,
            removals: 0,
            trace: None,
        }
    }

    /// Root placements visit blue vertices in a seeded random order instead
    /// of by increasing id.
    pub fn with_seed(mut self, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..self.host.n()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        self.scan_order = Some(order);
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn host(&self) -> &'h Graph {
        self.host
    }

    pub fn guest(&self) -> &GuestTree {
        &self.guest
    }

    pub fn placed(&self) -> &BTreeMap<TokenLabel, usize> {
        &self.placed
    }

    pub fn token_at(&self, v: usize) -> Option<TokenLabel> {
        self.token_at[v]
    }

    pub fn is_red(&self, v: usize) -> bool {
        self.red[v]
    }

    pub fn path_to_parent(&self, label: TokenLabel) -> &[usize] {
        self.paths.get(&label).map_or(&[], Vec::as_slice)
    }

    pub fn history(&self) -> &[Vec<usize>] {
        &self.history
    }

    /// Adjacency entries examined plus blue-vertex scan steps.
    pub fn touches(&self) -> u64 {
        self.touches
    }

    pub fn blue_left(&self) -> usize {
        self.blue_left
    }

    pub fn root_placements(&self) -> usize {
        self.root_placements
    }

    pub fn removals(&self) -> usize {
        self.removals
    }

    pub fn all_flagged_placed(&self) -> bool {
        self.flagged_placed == self.guest.flagged_count()
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        self.trace.take().unwrap_or_default()
    }

    fn step(&self) -> usize {
        self.history.len()
    }

    fn emit(&mut self, event: impl FnOnce(usize) -> TraceEvent) {
        let step = self.step();
        if let Some(trace) = self.trace.as_mut() {
            trace.push(event(step));
        }
    }

    fn place(&mut self, label: TokenLabel, v: usize) {
        assert!(!self.red[v], "only blue vertices can be tokened");
        self.red[v] = true;
        self.blue_left -= 1;
        self.insert(label, v);
    }

    fn insert(&mut self, label: TokenLabel, v: usize) {
        debug_assert!(self.token_at[v].is_none());
        let previous = self.placed.insert(label, v);
        debug_assert!(previous.is_none(), "duplicate token {label}");
        self.token_at[v] = Some(label);
        if self.guest.is_flagged(label) {
            self.flagged_placed += 1;
        }
        self.worklist.push(v);
    }

    fn take(&mut self, label: TokenLabel) -> usize {
        let v = self.placed.remove(&label).expect("token is placed");
        self.token_at[v] = None;
        if self.guest.is_flagged(label) {
            self.flagged_placed -= 1;
        }
        v
    }

    fn next_blue(&mut self) -> Option<usize> {
        while self.scan_pos < self.host.n() {
            let v = match &self.scan_order {
                Some(order) => order[self.scan_pos],
                None => self.scan_pos,
            };
            self.scan_pos += 1;
            self.touches += 1;
            if !self.red[v] {
                return Some(v);
            }
        }
        None
    }

    fn unplaced_flagged_child(&self, label: TokenLabel) -> Option<TokenLabel> {
        [label.child(true), label.child(false)]
            .into_iter()
            .find(|&c| self.guest.is_flagged(c) && !self.placed.contains_key(&c))
    }

    fn tokened_children(&self, label: TokenLabel) -> Vec<TokenLabel> {
        self.guest
            .children(label)
            .into_iter()
            .filter(|c| self.placed.contains_key(c))
            .collect()
    }

    /// Places the root if needed, then keeps placing unplaced flagged
    /// children of placed tokens on blue neighbors until none can be placed.
    /// Returns the tokened vertices in increasing order.
    ///
    /// On return, every token with an unplaced flagged child sits on a
    /// vertex whose neighbors are all red.
    pub fn grow_token_tree(&mut self) -> Vec<usize> {
        self.grow();
        self.bag()
    }

    pub(crate) fn grow(&mut self) {
        if !self.placed.contains_key(&TokenLabel::ROOT) {
            if let Some(v) = self.next_blue() {
                self.place(TokenLabel::ROOT, v);
                self.root_placements += 1;
                self.emit(|step| TraceEvent::RootPlace {
                    step,
                    label: TokenLabel::ROOT,
                    vertex: v,
                });
            }
        }
        while let Some(u) = self.worklist.pop() {
            let Some(label) = self.token_at[u] else {
                continue;
            };
            while let Some(child) = self.unplaced_flagged_child(label) {
                let adj = self.host.neighbors(u);
                let mut blue = None;
                while self.cursor[u] < adj.len() {
                    let w = adj[self.cursor[u]];
                    self.cursor[u] += 1;
                    self.touches += 1;
                    if !self.red[w] {
                        blue = Some(w);
                        break;
                    }
                }
                let Some(w) = blue else {
                    break;
                };
                self.place(child, w);
                self.paths.remove(&child);
                self.emit(|step| TraceEvent::Place {
                    step,
                    label: child,
                    vertex: w,
                });
            }
        }
    }

    fn bag(&self) -> Vec<usize> {
        let mut bag: Vec<usize> = self.placed.values().copied().collect();
        bag.sort_unstable();
        bag
    }

    /// Records the current tokened set as the next bag.
    pub fn snapshot(&mut self) -> &[usize] {
        let bag = self.bag();
        self.emit(|step| TraceEvent::Snapshot {
            step,
            bag: bag.clone(),
        });
        self.history.push(bag);
        self.history.last().unwrap()
    }

    /// A placed token with an unplaced flagged child, chosen by `strategy`.
    pub fn pick_removal_token(&self, strategy: Strategy) -> Option<TokenLabel> {
        let mut candidates = self
            .placed
            .keys()
            .copied()
            .filter(|&l| self.unplaced_flagged_child(l).is_some());
        match strategy {
            Strategy::LowestLabel => candidates.next(),
            // keys come in lexicographic order, so the first of each length wins ties
            Strategy::Deepest => candidates.fold(None, |best: Option<TokenLabel>, l| match best {
                Some(b) if b.len() >= l.len() => Some(b),
                _ => Some(l),
            }),
        }
    }

    /// Removes `label` from the host and repairs the tree of placed tokens.
    ///
    /// With one tokened child, that child's subtree moves up one level and
    /// the freed vertex subdivides the edge to the parent. Otherwise, in
    /// shift mode, a placed unflagged sibling subtree is moved into the
    /// freed flagged slot.
    pub fn remove_and_relabel(&mut self, label: TokenLabel) -> Removal {
        let w = self.placed[&label];
        assert_eq!(
            self.cursor[w],
            self.host.degree(w),
            "token {label} removed from vertex {w} before its neighbors were exhausted"
        );
        debug_assert!(self.host.neighbors(w).iter().all(|&x| self.red[x]));
        self.take(label);
        self.removals += 1;
        self.emit(|step| TraceEvent::Remove {
            step,
            label,
            vertex: w,
        });
        if let Some(p) = label.parent() {
            self.worklist.push(self.placed[&p]);
        }
        let removal = match self.tokened_children(label)[..] {
            [child] => {
                self.record_subdivision(label, w, child);
                Removal::Subdivided { child }
            }
            [] => {
                self.paths.remove(&label);
                match label.sibling() {
                    Some(s)
                        if self.relabel == RelabelMode::Shift
                            && !self.guest.is_flagged(s)
                            && self.placed.contains_key(&s) =>
                    {
                        self.move_subtree(s, label);
                        self.emit(|step| TraceEvent::Shift {
                            step,
                            from: s,
                            to: label,
                        });
                        Removal::Shifted { sibling: s }
                    }
                    _ => Removal::Dropped,
                }
            }
            _ => {
                unreachable!("a token with an unplaced flagged child has at most one tokened child")
            }
        };
        if self.relabel == RelabelMode::Expand {
            self.expand_flags();
        }
        removal
    }

    /// Moves the subtree of `child` up into the slot of `removed`, whose
    /// vertex `removed_vertex` joins the path to the parent. When `removed`
    /// is the root there is no parent edge and the vertex is dropped.
    pub fn record_subdivision(
        &mut self,
        removed: TokenLabel,
        removed_vertex: usize,
        child: TokenLabel,
    ) {
        assert_eq!(child.parent(), Some(removed));
        assert!(!self.placed.contains_key(&removed));
        let upper = self.paths.remove(&removed).unwrap_or_default();
        let lower = self.paths.remove(&child).unwrap_or_default();
        self.move_subtree(child, removed);
        if !removed.is_root() {
            let mut path = upper;
            path.push(removed_vertex);
            path.extend(lower);
            self.paths.insert(removed, path);
        }
        self.emit(|step| TraceEvent::Relabel {
            step,
            from: child,
            to: removed,
            subdivision: (!removed.is_root()).then_some(removed_vertex),
        });
    }

    /// Relabels every placed token `from·S` as `to·S`, carrying paths along.
    fn move_subtree(&mut self, from: TokenLabel, to: TokenLabel) {
        let mut moved = Vec::new();
        let mut stack = vec![from];
        while let Some(l) = stack.pop() {
            if self.placed.contains_key(&l) {
                moved.push(l);
                stack.extend(self.guest.children(l));
            }
        }
        let entries: Vec<(TokenLabel, usize, Option<Vec<usize>>)> = moved
            .into_iter()
            .map(|l| {
                let v = self.take(l);
                (l, v, self.paths.remove(&l))
            })
            .collect();
        for (l, v, path) in entries {
            let new = l.replace_prefix(from, to);
            assert!(self.guest.contains(new), "relabel left the guest");
            self.insert(new, v);
            if let Some(path) = path {
                self.paths.insert(new, path);
            }
        }
    }

    fn expand_flags(&mut self) {
        let unflagged: Vec<TokenLabel> = self
            .placed
            .keys()
            .copied()
            .filter(|&l| !self.guest.is_flagged(l))
            .collect();
        // lexicographic order lists parents before children
        for l in unflagged {
            if self.guest.flag(l) {
                self.flagged_placed += 1;
            }
        }
    }

    /// Panics if a structural invariant is broken. Linear in the state size.
    pub fn check_invariants(&self) {
        for (&l, &v) in &self.placed {
            assert_eq!(self.token_at[v], Some(l));
            assert!(self.red[v], "tokened vertex {v} is blue");
            if let Some(p) = l.parent() {
                assert!(
                    self.placed.contains_key(&p),
                    "token {l} has no placed parent"
                );
            }
        }
        let tokened = self.token_at.iter().filter(|t| t.is_some()).count();
        assert_eq!(tokened, self.placed.len());
        assert!(self.placed.len() <= self.guest.universe_size());
        let flagged = self
            .placed
            .keys()
            .filter(|&&l| self.guest.is_flagged(l))
            .count();
        assert_eq!(flagged, self.flagged_placed);
        for l in self.guest.flagged() {
            if let Some(p) = l.parent() {
                assert!(self.guest.is_flagged(p));
            }
        }
        let bound = 2 * self.host.m() as u64 + self.host.n() as u64;
        assert!(
            self.touches <= bound,
            "{} touches exceed {bound}",
            self.touches
        );
    }
}
