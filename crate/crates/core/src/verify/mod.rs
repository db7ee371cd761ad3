//! Executable verification suites.
//!
//! Each suite sweeps a finite parameter range in a fixed order and stops at
//! the first counterexample, so a failure report always carries the
//! smallest failing case of the sweep. Internal errors (a broken invariant
//! inside the library) propagate as `Err` rather than as a failed report.

mod algebra;
mod calculus;
mod criterion;
mod relations;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use algebra::{check_basis, check_invariants, check_leading, check_straighten, StraightenScope};
pub use calculus::check_calculus;
pub use criterion::{check_criterion, CriterionScope};
pub use relations::{check_relations, check_sft};

/// The named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Basis,
    Leading,
    Sft,
    Invariants,
    Criterion,
    Relations,
    Straighten,
    Calculus,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Basis,
        Suite::Leading,
        Suite::Sft,
        Suite::Invariants,
        Suite::Criterion,
        Suite::Relations,
        Suite::Straighten,
        Suite::Calculus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Basis => "basis",
            Suite::Leading => "leading",
            Suite::Sft => "sft",
            Suite::Invariants => "invariants",
            Suite::Criterion => "criterion",
            Suite::Relations => "relations",
            Suite::Straighten => "straighten",
            Suite::Calculus => "calculus",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown suite `{s}`")))
    }
}

/// Outcome of one suite: how many cases ran and the first failure, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub cases: usize,
    pub failure: Option<Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "cases": self.cases,
            "failure": self.failure,
        })
    }
}

/// Counts cases and remembers the first failure.
#[derive(Debug)]
pub(crate) struct Tally {
    suite: Suite,
    cases: usize,
    failure: Option<Value>,
}

impl Tally {
    pub(crate) fn new(suite: Suite) -> Self {
        Tally {
            suite,
            cases: 0,
            failure: None,
        }
    }

    /// Records one case; returns false once a failure is held, so sweeps
    /// can stop early.
    pub(crate) fn record(&mut self, ok: bool, detail: impl FnOnce() -> Value) -> bool {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
        self.failure.is_none()
    }

    pub(crate) fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    pub(crate) fn finish(self) -> Report {
        Report {
            suite: self.suite,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

/// Worker count: `ARCSTRAIGHT_THREADS` when set, else the available cores.
pub fn thread_budget() -> Result<usize> {
    match std::env::var("ARCSTRAIGHT_THREADS") {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::usage(format!("ARCSTRAIGHT_THREADS must be a positive integer, got `{v}`"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Maps `f` over `items` on up to `threads` scoped workers; results come
/// back in input order regardless of scheduling.
pub(crate) fn par_map<T: Sync, R: Send>(
    items: &[T],
    threads: usize,
    f: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(&f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let done = std::sync::Mutex::new(Vec::with_capacity(items.len()));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                done.lock().expect("no worker panics while holding the lock").push((i, r));
            });
        }
    });
    for (i, r) in done.into_inner().expect("workers finished") {
        slots[i] = Some(r);
    }
    slots.into_iter().map(|r| r.expect("every index processed")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn par_map_keeps_order() {
        let items: Vec<u32> = (0..50).collect();
        assert_eq!(par_map(&items, 4, |x| x * 2), items.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(par_map(&items, 1, |x| x + 1)[49], 50);
        assert!(par_map(&Vec::<u32>::new(), 3, |x| *x).is_empty());
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::new(Suite::Basis);
        assert!(t.record(true, || json!(0)));
        assert!(!t.record(false, || json!(1)));
        t.record(false, || json!(2));
        let r = t.finish();
        assert_eq!(r.cases, 3);
        assert_eq!(r.failure, Some(json!(1)));
        assert_eq!(r.to_json()["passed"], json!(false));
    }
}
