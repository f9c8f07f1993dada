use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::guest::TokenLabel;

/// One step of a run, written as a line of JSON. `step` is the index of the
/// snapshot the event leads up to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum TraceEvent {
    RootPlace {
        step: usize,
        label: TokenLabel,
        vertex: usize,
    },
    Place {
        step: usize,
        label: TokenLabel,
        vertex: usize,
    },
    Remove {
        step: usize,
        label: TokenLabel,
        vertex: usize,
    },
    /// The subtree at `from` moved up to `to`; `subdivision` is the freed
    /// vertex now lying on the edge above `to`.
    Relabel {
        step: usize,
        from: TokenLabel,
        to: TokenLabel,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        subdivision: Option<usize>,
    },
    /// The unflagged sibling subtree at `from` took over the slot `to`.
    Shift {
        step: usize,
        from: TokenLabel,
        to: TokenLabel,
    },
    Snapshot {
        step: usize,
        bag: Vec<usize>,
    },
}

impl TraceEvent {
    pub fn step(&self) -> usize {
        match *self {
            TraceEvent::RootPlace { step, .. }
            | TraceEvent::Place { step, .. }
            | TraceEvent::Remove { step, .. }
            | TraceEvent::Relabel { step, .. }
            | TraceEvent::Shift { step, .. }
            | TraceEvent::Snapshot { step, .. } => step,
        }
    }
}

/// Writes events as newline-delimited JSON.
pub fn write_ndjson<W: Write>(mut out: W, events: &[TraceEvent]) -> io::Result<()> {
    for e in events {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
