//! Guest trees: complete binary trees with token labels, pathwidth tree
//! obstructions, and the size bound `f(t)`.

pub mod canon;
mod label;
mod obstruction;
mod tree;

use thiserror::Error;

pub use label::{TokenLabel, MAX_LABEL_LEN};
pub use obstruction::{
    default_guest, embed_in_binary_tree, generate_obstructions, generate_obstructions_max_degree,
    sample_obstruction, EmbeddedObstruction, ObstructionTree,
};
pub use tree::{GuestTree, MAX_GUEST_HEIGHT};

/// Largest `t` for which `f(t)` fits the word size.
pub const MAX_BOUND_T: u32 = 28;
/// Largest `t` for which obstructions are generated.
pub const MAX_OBSTRUCTION_T: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuestError {
    #[error("t = {0} is too large for f(t) (at most {MAX_BOUND_T})")]
    BoundTooLarge(u32),
    #[error("t = {0} is too large for obstruction generation (at most {MAX_OBSTRUCTION_T})")]
    ObstructionTooLarge(u32),
    #[error("guest height {0} outside 1..={MAX_GUEST_HEIGHT}")]
    Height(u32),
    #[error("token {label} lies outside the guest of height {height}")]
    OutsideUniverse { label: TokenLabel, height: u32 },
    #[error("flagged token {0} has an unflagged parent")]
    NotClosed(TokenLabel),
    #[error("no flagged tokens")]
    EmptyFlags,
    #[error("obstruction is not a tree")]
    NotATree,
    #[error("obstruction does not fit a binary tree of height {cap}{}", depth.map(|d| format!(" (needs {d})")).unwrap_or_default())]
    NoEmbedding { depth: Option<u32>, cap: u32 },
}

/// `f(t) = 2^(2t+2) - 1`, the order of the complete binary tree of height
/// `2t + 2`.
pub fn f_bound(t: u32) -> Result<u64, GuestError> {
    if t > MAX_BOUND_T {
        return Err(GuestError::BoundTooLarge(t));
    }
    Ok((1u64 << (2 * t + 2)) - 1)
}

/// Height of the complete binary tree whose order is `f(t)`.
pub fn guest_height(t: u32) -> u32 {
    2 * t + 2
}

/// Order of every tree obstruction for pathwidth `t`: `(5 * 3^t - 1) / 2`.
pub fn obstruction_order(t: u32) -> u64 {
    (5 * 3u64.pow(t) - 1) / 2
}
