//! Pathwidth by pebbling: for a graph `H` and a parameter `t`, either a
//! path-decomposition of width below `f(t) = 2^(2t+2) - 1` or a subgraph
//! of `H` carrying an embedded tree obstruction, so that pathwidth exceeds `t`.
//!
//! Every output can be rechecked with the validators in [`verify`].

pub mod bench;
pub mod graph;
pub mod guest;
pub mod pebbling;
pub mod selftest;
pub mod verify;
