//! The pebbling algorithm: grow a tree of tokens over the host, remove and
//! relabel tokens that are stuck, and stop when the guest is embedded or the
//! host is used up.

mod outcome;
mod state;
pub mod trace;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use outcome::{
    CertificateError, FatFactor, Outcome, OutcomeReport, RunReport, RunStats, TokenEmbedding,
};
pub use state::{PebbleState, Removal};
pub use trace::TraceEvent;

use crate::graph::{BoundaryGraph, Graph};
use crate::guest::{default_guest, f_bound, guest_height, GuestError, GuestTree};
use crate::verify::PathDecomposition;

/// Largest `t` accepted with the complete guest `B_{2t+2}`.
pub const MAX_COMPLETE_T: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PebbleError {
    #[error(transparent)]
    Guest(#[from] GuestError),
    #[error("t = {0} is too large for the complete guest (at most {MAX_COMPLETE_T})")]
    CompleteTooLarge(u32),
}

/// Which flagged guest a run embeds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum GuestChoice {
    /// The shallowest embeddable tree obstruction for `t`.
    #[default]
    Obstruction,
    /// All of `B_{2t+2}`.
    Complete,
    Custom(GuestTree),
}

/// What happens after a stuck token is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RelabelMode {
    /// Move a lone tokened child up, else let a placed unflagged sibling
    /// take over the removed slot.
    #[default]
    Shift,
    /// Move a lone tokened child up and flag every placed token, growing the
    /// guest.
    Expand,
}

/// Which stuck token to remove.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Longest label, lexicographically smallest among those.
    #[default]
    Deepest,
    /// Lexicographically smallest label.
    LowestLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} '{value}'")]
pub struct UnknownOption {
    kind: &'static str,
    value: String,
}

impl UnknownOption {
    pub fn new(kind: &'static str, value: &str) -> Self {
        UnknownOption {
            kind,
            value: value.to_string(),
        }
    }
}

macro_rules! string_enum {
    ($ty:ty, $kind:literal, $($name:literal => $variant:expr),+) => {
        impl FromStr for $ty {
            type Err = UnknownOption;
            fn from_str(s: &str) -> Result<Self, UnknownOption> {
                match s {
                    $($name => Ok($variant),)+
                    _ => Err(UnknownOption::new($kind, s)),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                $(if *self == $variant { return f.write_str($name); })+
                unreachable!()
            }
        }
    };
}

string_enum!(RelabelMode, "relabel mode", "shift" => RelabelMode::Shift, "expand" => RelabelMode::Expand);
string_enum!(Strategy, "strategy", "deepest" => Strategy::Deepest, "lowest-label" => Strategy::LowestLabel);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub guest: GuestChoice,
    pub relabel: RelabelMode,
    pub strategy: Strategy,
    /// Randomizes where the root token goes when it is (re)placed.
    pub seed: Option<u64>,
    pub trace: bool,
    /// Check every state invariant after each step (quadratic; for tests).
    pub check_invariants: bool,
}

/// The guest a run with these options embeds.
pub fn resolve_guest(t: u32, options: &RunOptions) -> Result<GuestTree, PebbleError> {
    f_bound(t)?;
    let guest = match &options.guest {
        GuestChoice::Obstruction => default_guest(t)?.guest.clone(),
        GuestChoice::Complete => {
            if t > MAX_COMPLETE_T {
                return Err(PebbleError::CompleteTooLarge(t));
            }
            GuestTree::complete(guest_height(t))?
        }
        GuestChoice::Custom(g) => g.clone(),
    };
    Ok(guest.expandable(options.relabel == RelabelMode::Expand))
}

/// Runs the algorithm on `host` for parameter `t`.
pub fn run(host: &Graph, t: u32, options: &RunOptions) -> Result<RunReport, PebbleError> {
    let guest = resolve_guest(t, options)?;
    let f = f_bound(t)?;
    let (n, m) = (host.n(), host.m());
    let mut stats = RunStats {
        n,
        m,
        t,
        f,
        touch_bound: 2 * m as u64 + n as u64,
        ..RunStats::default()
    };
    let bound = t as u64 * n as u64;
    if m as u64 > bound {
        stats.guest_tokens = guest.flagged_count();
        return Ok(RunReport {
            outcome: Outcome::EdgeBoundReject {
                edge_count: m,
                bound,
            },
            stats,
            history: Vec::new(),
            trace: Vec::new(),
        });
    }

    let mut state = PebbleState::new(host, guest, options.relabel);
    if let Some(seed) = options.seed {
        state = state.with_seed(seed);
    }
    if options.trace {
        state = state.with_trace();
    }
    state.grow();
    state.snapshot();
    let fat = loop {
        if options.check_invariants {
            state.check_invariants();
        }
        if state.all_flagged_placed() {
            break true;
        }
        if state.blue_left() == 0 {
            break false;
        }
        let token = state
            .pick_removal_token(options.strategy)
            .expect("a placed token has an unplaced flagged child");
        state.remove_and_relabel(token);
        state.grow();
        state.snapshot();
    };

    let outcome = if fat {
        Outcome::FatFactor(Box::new(fat_factor(&state)))
    } else {
        Outcome::FullDecomposition {
            decomposition: PathDecomposition::new(state.history().to_vec()),
        }
    };
    stats.guest_tokens = state.guest().flagged_count();
    stats.touches = state.touches();
    stats.snapshots = state.history().len();
    stats.removals = state.removals();
    stats.root_placements = state.root_placements();
    stats.width = state
        .history()
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
        .saturating_sub(1);
    Ok(RunReport {
        outcome,
        stats,
        history: state.history().to_vec(),
        trace: state.take_trace(),
    })
}

fn fat_factor(state: &PebbleState<'_>) -> FatFactor {
    let host = state.host();
    let n = host.n();
    let bag = state
        .history()
        .last()
        .expect("at least one snapshot")
        .clone();
    let in_bag = {
        let mut v = vec![false; n];
        bag.iter().for_each(|&x| v[x] = true);
        v
    };
    let factor_vertices: Vec<usize> = (0..n).filter(|&v| state.is_red(v)).collect();
    let complement_vertices: Vec<usize> =
        (0..n).filter(|&v| !state.is_red(v) || in_bag[v]).collect();
    let local = |vertices: &[usize]| {
        let mut index = vec![usize::MAX; n];
        vertices.iter().enumerate().for_each(|(i, &v)| index[v] = i);
        index
    };
    let a_id = local(&factor_vertices);
    let b_id = local(&complement_vertices);
    let factor = BoundaryGraph::new(
        host.induced(&factor_vertices),
        bag.iter().map(|&v| a_id[v]).collect(),
    )
    .expect("bag vertices are red");
    let complement = BoundaryGraph::new(
        host.induced(&complement_vertices),
        bag.iter().map(|&v| b_id[v]).collect(),
    )
    .expect("bag vertices are in the complement");
    let decomposition = PathDecomposition::new(
        state
            .history()
            .iter()
            .map(|b| b.iter().map(|&v| a_id[v]).collect())
            .collect(),
    );
    let mut certificate = TokenEmbedding::default();
    for (&label, &v) in state.placed() {
        if !state.guest().is_flagged(label) {
            continue;
        }
        certificate.token_host.insert(label, v);
        if !label.is_root() {
            certificate
                .edge_paths
                .insert(label, state.path_to_parent(label).to_vec());
        }
    }
    FatFactor {
        factor,
        factor_vertices,
        complement,
        complement_vertices,
        decomposition,
        certificate,
    }
}
