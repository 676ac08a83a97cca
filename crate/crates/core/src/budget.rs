//! Resource limits for the exponential routines.
//!
//! Every search that can blow up takes a [`Budget`]. Size caps are checked up
//! front; node counts and wall-clock time are checked while searching through
//! a shared [`Meter`].

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Environment variable holding a wall-clock cap in milliseconds.
pub const BUDGET_ENV: &str = "SFL_BUDGET_MS";

/// Hard ceiling imposed by the 64-bit subset representation.
pub const MAX_BITSET_N: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n` accepted by the maximum-size search.
    pub max_n_mu: u64,
    /// Largest `n` accepted when counting all solution-free sets.
    pub max_n_count: u64,
    /// Largest `n` accepted when counting maximal solution-free sets.
    pub max_n_maximal: u64,
    /// Largest number of tuples scanned by `enumerate_solutions` (`n^(k-1)`).
    pub max_scan: u64,
    /// Largest component (after loop removal) handed to the MIS enumerator.
    pub max_mis_vertices: usize,
    /// Largest number of search nodes visited by one operation.
    pub max_nodes: u64,
    pub wall: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_n_mu: 64,
            max_n_count: 64,
            max_n_maximal: 48,
            max_scan: 50_000_000,
            max_mis_vertices: 40,
            max_nodes: 1 << 36,
            wall: None,
        }
    }
}

impl Budget {
    /// Default limits, with the wall-clock cap taken from `SFL_BUDGET_MS` when set.
    pub fn from_env() -> Self {
        let wall = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map(Duration::from_millis);
        Budget {
            wall,
            ..Budget::default()
        }
    }

    pub fn with_wall(mut self, wall: Duration) -> Self {
        self.wall = Some(wall);
        self
    }

    pub(crate) fn check_n(&self, what: &str, n: u64, cap: u64) -> Result<()> {
        let cap = cap.min(MAX_BITSET_N);
        if n > cap {
            return Err(Error::BudgetExceeded(format!(
                "{what}: n = {n} exceeds the configured cap {cap}"
            )));
        }
        Ok(())
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            start: Instant::now(),
            wall: self.wall,
            max_nodes: self.max_nodes,
            nodes: AtomicU64::new(0),
            tripped: AtomicBool::new(false),
        }
    }
}

/// Node and time accounting for a running search. Shareable across rayon workers.
#[derive(Debug)]
pub(crate) struct Meter {
    start: Instant,
    wall: Option<Duration>,
    max_nodes: u64,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

const TICK_BATCH: u64 = 1024;

impl Meter {
    /// Accounts for one batch of `TICK_BATCH` nodes.
    pub(crate) fn tick_batch(&self) -> Result<()> {
        if self.tripped.load(Ordering::Relaxed) {
            return Err(self.exceeded());
        }
        let seen = self.nodes.fetch_add(TICK_BATCH, Ordering::Relaxed) + TICK_BATCH;
        if seen > self.max_nodes {
            self.tripped.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExceeded(format!(
                "search visited more than {} nodes",
                self.max_nodes
            )));
        }
        if let Some(wall) = self.wall {
            if self.start.elapsed() > wall {
                self.tripped.store(true, Ordering::Relaxed);
                return Err(self.exceeded());
            }
        }
        Ok(())
    }

    fn exceeded(&self) -> Error {
        match self.wall {
            Some(w) => Error::BudgetExceeded(format!(
                "wall-clock cap of {} ms reached",
                w.as_millis()
            )),
            None => Error::BudgetExceeded("node cap reached".into()),
        }
    }
}

/// Per-thread node counter that reports to a [`Meter`] in batches.
pub(crate) struct Ticker<'a> {
    meter: &'a Meter,
    local: u64,
}

impl<'a> Ticker<'a> {
    pub(crate) fn new(meter: &'a Meter) -> Self {
        Ticker { meter, local: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.local += 1;
        if self.local == TICK_BATCH {
            self.local = 0;
            self.meter.tick_batch()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_cap_trips() {
        let budget = Budget {
            max_nodes: 2048,
            ..Budget::default()
        };
        let meter = budget.meter();
        let mut t = Ticker::new(&meter);
        let mut err = None;
        for _ in 0..10_000 {
            if let Err(e) = t.tick() {
                err = Some(e);
                break;
            }
        }
        assert!(matches!(err, Some(Error::BudgetExceeded(_))));
    }

    #[test]
    fn n_cap_is_clamped_to_bitset_width() {
        let b = Budget {
            max_n_mu: 1000,
            ..Budget::default()
        };
        assert!(b.check_n("mu", 64, b.max_n_mu).is_ok());
        assert!(b.check_n("mu", 65, b.max_n_mu).is_err());
    }
}
