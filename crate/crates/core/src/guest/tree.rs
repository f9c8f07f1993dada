use super::{GuestError, TokenLabel};
use crate::graph::Graph;

/// Largest guest height a run will materialize (2^20 - 1 tokens).
pub const MAX_GUEST_HEIGHT: u32 = 20;

/// The complete binary tree `B_h` together with the flagged rooted subtree
/// that a run tries to embed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuestTree {
    height: u32,
    flags: Vec<bool>,
    flagged_count: usize,
    expandable: bool,
}

impl GuestTree {
    /// `B_h` with every token flagged.
    pub fn complete(height: u32) -> Result<Self, GuestError> {
        check_height(height)?;
        let size = (1usize << height) - 1;
        Ok(GuestTree {
            height,
            flags: vec![true; size],
            flagged_count: size,
            expandable: false,
        })
    }

    /// `B_h` with the given flagged set, which must contain the root and be
    /// closed under taking parents.
    pub fn with_flags<I>(height: u32, flagged: I) -> Result<Self, GuestError>
    where
        I: IntoIterator<Item = TokenLabel>,
    {
        check_height(height)?;
        let mut flags = vec![false; (1usize << height) - 1];
        let mut count = 0;
        let mut labels = Vec::new();
        for label in flagged {
            if label.len() >= height {
                return Err(GuestError::OutsideUniverse { label, height });
            }
            if !std::mem::replace(&mut flags[label.heap_index()], true) {
                count += 1;
                labels.push(label);
            }
        }
        if count == 0 {
            return Err(GuestError::EmptyFlags);
        }
        for label in labels {
            if let Some(p) = label.parent() {
                if !flags[p.heap_index()] {
                    return Err(GuestError::NotClosed(label));
                }
            }
        }
        Ok(GuestTree {
            height,
            flags,
            flagged_count: count,
            expandable: false,
        })
    }

    pub fn expandable(mut self, on: bool) -> Self {
        self.expandable = on;
        self
    }

    pub fn is_expandable(&self) -> bool {
        self.expandable
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// `2^h - 1`.
    pub fn universe_size(&self) -> usize {
        self.flags.len()
    }

    pub fn contains(&self, label: TokenLabel) -> bool {
        label.len() < self.height
    }

    pub fn is_flagged(&self, label: TokenLabel) -> bool {
        self.contains(label) && self.flags[label.heap_index()]
    }

    pub fn flagged_count(&self) -> usize {
        self.flagged_count
    }

    /// Flagged labels in lexicographic order.
    pub fn flagged(&self) -> Vec<TokenLabel> {
        let mut out = Vec::with_capacity(self.flagged_count);
        let mut stack = vec![TokenLabel::ROOT];
        // preorder visiting `0` before `1` is lexicographic order
        while let Some(l) = stack.pop() {
            if !self.is_flagged(l) {
                continue;
            }
            out.push(l);
            if l.len() + 1 < self.height {
                stack.push(l.child(true));
                stack.push(l.child(false));
            }
        }
        out
    }

    /// `[label·1, label·0]`, or nothing at the bottom level.
    pub fn children(&self, label: TokenLabel) -> Vec<TokenLabel> {
        if label.len() + 1 < self.height {
            vec![label.child(true), label.child(false)]
        } else {
            Vec::new()
        }
    }

    pub fn flagged_children(&self, label: TokenLabel) -> Vec<TokenLabel> {
        self.children(label)
            .into_iter()
            .filter(|&c| self.is_flagged(c))
            .collect()
    }

    pub fn unflagged_children(&self, label: TokenLabel) -> Vec<TokenLabel> {
        self.children(label)
            .into_iter()
            .filter(|&c| !self.is_flagged(c))
            .collect()
    }

    /// Flags `label`; its parent must already be flagged. Returns whether the
    /// flag was new.
    pub(crate) fn flag(&mut self, label: TokenLabel) -> bool {
        assert!(self.contains(label));
        if let Some(p) = label.parent() {
            assert!(self.is_flagged(p), "flagging {label} would break closure");
        }
        let slot = &mut self.flags[label.heap_index()];
        if *slot {
            return false;
        }
        *slot = true;
        self.flagged_count += 1;
        true
    }

    /// The flagged subtree as a graph; vertex `i` is `labels[i]`, labels in
    /// lexicographic order.
    pub fn flagged_tree(&self) -> (Graph, Vec<TokenLabel>) {
        let labels = self.flagged();
        let edges: Vec<(usize, usize)> = labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| {
                let p = l.parent()?;
                let j = labels.binary_search(&p).expect("flags are closed");
                Some((j, i))
            })
            .collect();
        let g = Graph::from_edges(labels.len(), edges).expect("a rooted subtree is simple");
        (g, labels)
    }
}

fn check_height(height: u32) -> Result<(), GuestError> {
    if height == 0 || height > MAX_GUEST_HEIGHT {
        return Err(GuestError::Height(height));
    }
    Ok(())
}
