use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Longest label a [`TokenLabel`] can hold.
pub const MAX_LABEL_LEN: u32 = 63;

/// Address of a token in a complete binary tree: a binary string, root = the
/// empty string. The left child of `P` is `P1`, the right child is `P0`.
///
/// Ordering is lexicographic on the strings (`"" < "0" < "00" < "01" < "1"`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TokenLabel {
    len: u8,
    // the string, first character in the most significant of the low `len` bits
    bits: u64,
}

impl TokenLabel {
    pub const ROOT: TokenLabel = TokenLabel { len: 0, bits: 0 };

    /// Depth in the guest tree; the root has length 0 (see `is_root`).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> u32 {
        self.len as u32
    }

    pub fn is_root(self) -> bool {
        self.len == 0
    }

    /// `self·1` for `bit = true`, `self·0` otherwise.
    pub fn child(self, bit: bool) -> TokenLabel {
        assert!((self.len as u32) < MAX_LABEL_LEN, "token label too long");
        TokenLabel {
            len: self.len + 1,
            bits: (self.bits << 1) | bit as u64,
        }
    }

    pub fn parent(self) -> Option<TokenLabel> {
        (self.len > 0).then(|| TokenLabel {
            len: self.len - 1,
            bits: self.bits >> 1,
        })
    }

    pub fn last_bit(self) -> Option<bool> {
        (self.len > 0).then_some(self.bits & 1 == 1)
    }

    pub fn sibling(self) -> Option<TokenLabel> {
        (self.len > 0).then_some(TokenLabel {
            len: self.len,
            bits: self.bits ^ 1,
        })
    }

    pub fn is_prefix_of(self, other: TokenLabel) -> bool {
        self.len <= other.len && other.bits >> (other.len - self.len) == self.bits
    }

    /// Rewrites `old·S` as `new·S`. Panics if `old` is not a prefix.
    pub fn replace_prefix(self, old: TokenLabel, new: TokenLabel) -> TokenLabel {
        assert!(old.is_prefix_of(self), "{old} is not a prefix of {self}");
        let suffix_len = self.len - old.len;
        let suffix = self.bits & mask(suffix_len);
        let len = new.len as u32 + suffix_len as u32;
        assert!(len <= MAX_LABEL_LEN, "token label too long");
        TokenLabel {
            len: len as u8,
            bits: (new.bits << suffix_len) | suffix,
        }
    }

    /// Position in breadth-first (heap) order: root 0, then `1`, `0`, ...
    /// inside each level ordered by the bit value.
    pub fn heap_index(self) -> usize {
        ((1usize << self.len) - 1) + self.bits as usize
    }

    pub fn bits(self) -> impl Iterator<Item = bool> {
        let (len, bits) = (self.len, self.bits);
        (0..len).rev().map(move |i| bits >> i & 1 == 1)
    }
}

fn mask(len: u8) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Ord for TokenLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let a = self.bits >> (self.len - common);
        let b = other.bits >> (other.len - common);
        a.cmp(&b).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for TokenLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The root prints as `-`.
impl fmt::Display for TokenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_root() {
            return f.write_str("-");
        }
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TokenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TokenLabel({self})")
    }
}

impl FromStr for TokenLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() || s == "λ" {
            return Ok(TokenLabel::ROOT);
        }
        if s.len() > MAX_LABEL_LEN as usize {
            return Err(format!("token label `{s}` is longer than {MAX_LABEL_LEN}"));
        }
        s.chars().try_fold(TokenLabel::ROOT, |acc, c| match c {
            '1' => Ok(acc.child(true)),
            '0' => Ok(acc.child(false)),
            _ => Err(format!("token label `{s}` must be `-` or a string of 0/1")),
        })
    }
}

impl Serialize for TokenLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TokenLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> TokenLabel {
        s.parse().unwrap()
    }

    #[test]
    fn children_and_parents() {
        let r = TokenLabel::ROOT;
        assert_eq!(r.child(true), l("1"));
        assert_eq!(r.child(false), l("0"));
        assert_eq!(l("101").parent(), Some(l("10")));
        assert_eq!(r.parent(), None);
        assert_eq!(l("10").sibling(), Some(l("11")));
        assert_eq!(l("10").last_bit(), Some(false));
    }

    #[test]
    fn lexicographic_order() {
        let mut v = [l("1"), l("01"), l("-"), l("0"), l("00"), l("10"), l("11")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["-", "0", "00", "01", "1", "10", "11"]);
    }

    #[test]
    fn prefix_rewrite() {
        assert!(l("1").is_prefix_of(l("101")));
        assert!(TokenLabel::ROOT.is_prefix_of(l("0")));
        assert!(!l("0").is_prefix_of(l("101")));
        assert_eq!(l("1101").replace_prefix(l("11"), l("1")), l("101"));
        assert_eq!(l("01").replace_prefix(l("0"), l("-")), l("1"));
        assert_eq!(l("10").replace_prefix(l("10"), l("11")), l("11"));
    }

    #[test]
    fn heap_index_is_dense() {
        let mut seen = vec![];
        for len in 0..4 {
            for bits in 0..(1u64 << len) {
                seen.push(TokenLabel { len, bits }.heap_index());
            }
        }
        seen.sort();
        assert_eq!(seen, (0..15).collect::<Vec<_>>());
    }

    #[test]
    fn parse_and_print() {
        for s in ["-", "0", "1", "0110"] {
            assert_eq!(l(s).to_string(), s);
        }
        assert!("012".parse::<TokenLabel>().is_err());
        assert_eq!(serde_json::to_string(&l("10")).unwrap(), "\"10\"");
    }
}
