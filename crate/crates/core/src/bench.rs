//! Timing and work counters over growing host families.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{generate, Graph};
use crate::pebbling::{run, PebbleError, RunOptions, UnknownOption};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RandomTree,
    /// Two rows of a grid, pathwidth 2.
    GridStrip,
    /// About `1.5 n` random edges, capped at `t n`.
    RandomSparse,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::RandomTree, Family::GridStrip, Family::RandomSparse];

    pub fn generate(self, n: usize, t: u32, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            Family::RandomTree => generate::random_tree(n, &mut rng),
            Family::GridStrip => generate::grid_strip(2, n.div_ceil(2)),
            Family::RandomSparse => {
                let max = n * n.saturating_sub(1) / 2;
                let m = (n + n / 2).min(t as usize * n).min(max);
                generate::random_sparse(n, m, &mut rng)
            }
        }
    }
}

impl FromStr for Family {
    type Err = UnknownOption;
    fn from_str(s: &str) -> Result<Self, UnknownOption> {
        match s {
            "random-tree" => Ok(Family::RandomTree),
            "grid-strip" => Ok(Family::GridStrip),
            "random-sparse" => Ok(Family::RandomSparse),
            _ => Err(UnknownOption::new("family", s)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::RandomTree => "random-tree",
            Family::GridStrip => "grid-strip",
            Family::RandomSparse => "random-sparse",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub t: u32,
    pub millis: f64,
    pub touches: u64,
    pub touch_bound: u64,
    pub snapshots: usize,
    pub outcome: String,
}

impl BenchRow {
    pub fn within_budget(&self) -> bool {
        self.touches <= self.touch_bound && self.snapshots <= self.n.max(1)
    }
}

/// One run per size. Wall time covers the run only, not graph generation.
pub fn bench(
    family: Family,
    sizes: &[usize],
    t: u32,
    seed: u64,
    options: &RunOptions,
) -> Result<Vec<BenchRow>, PebbleError> {
    sizes
        .iter()
        .map(|&n| {
            let host = family.generate(n, t, seed);
            let start = Instant::now();
            let report = run(&host, t, options)?;
            let millis = start.elapsed().as_secs_f64() * 1e3;
            Ok(BenchRow {
                family,
                n: host.n(),
                m: host.m(),
                t,
                millis,
                touches: report.stats.touches,
                touch_bound: report.stats.touch_bound,
                snapshots: report.stats.snapshots,
                outcome: report.outcome.kind().to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_size_list() {
        let rows = bench(Family::RandomTree, &[], 2, 0, &RunOptions::default()).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn counters_within_budget() {
        for family in Family::ALL {
            let rows = bench(family, &[1000, 2000], 2, 1, &RunOptions::default()).unwrap();
            for row in rows {
                assert!(row.within_budget(), "{row:?}");
                assert_ne!(row.outcome, "edge-bound-reject", "{row:?}");
            }
        }
    }

    #[test]
    fn family_names() {
        for family in Family::ALL {
            assert_eq!(family.to_string().parse::<Family>(), Ok(family));
        }
        let g = Family::GridStrip.generate(10, 2, 0);
        assert_eq!((g.n(), g.m()), (10, 13));
    }
}
