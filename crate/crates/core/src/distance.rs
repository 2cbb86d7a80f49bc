//! Exhaustive minimum-weight logical search.
//!
//! Patterns are visited by ascending weight; within a weight, supports in
//! lexicographic order and then local digits in lexicographic order. Each
//! weight is partitioned by the lowest support site and the partitions are
//! scanned in parallel; the merge keeps the first partition (in site order)
//! that reports a hit, so the witness is the same as a sequential scan.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::code::{DistanceRecord, StabilizerCode};
use crate::error::{Error, Result};
use crate::packed::{cumulative_pattern_count, KeyTable};
use crate::pauli::PauliVector;

/// Default cap on evaluated patterns.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_patterns: u128,
    pub force: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_patterns: DEFAULT_SEARCH_BUDGET,
            force: false,
        }
    }
}

impl SearchBudget {
    pub fn check(&self, required: u128, what: &str) -> Result<()> {
        if required > self.max_patterns && !self.force {
            return Err(Error::Resource(format!(
                "{what} needs {required} patterns, budget is {} (use --force-budget)",
                self.max_patterns
            )));
        }
        Ok(())
    }

    /// Largest weight whose cumulative pattern count fits the budget.
    pub fn max_weight(&self, code: &StabilizerCode) -> usize {
        (1..=code.n())
            .take_while(|&w| cumulative_pattern_count(code.field(), code.n(), w) <= self.max_patterns)
            .last()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinWeight {
    /// Smallest logical weight, with the first witness in enumeration order.
    Exact { d: usize, witness: PauliVector },
    /// No logical operator of weight below `bound`.
    NoLogicalBelow(usize),
}

impl MinWeight {
    pub fn record(&self, claimed: Option<usize>) -> DistanceRecord {
        match *self {
            MinWeight::Exact { d, .. } => DistanceRecord::Exact(d),
            MinWeight::NoLogicalBelow(at_least) => DistanceRecord::LowerBound { at_least, claimed },
        }
    }
}

/// Search weights `1..=w_max` for an element of `N(S) \ S`.
pub fn min_weight_logical(code: &StabilizerCode, w_max: usize, budget: SearchBudget) -> Result<MinWeight> {
    if w_max == 0 {
        return Err(Error::domain("w_max must be at least 1"));
    }
    if code.k() == 0 {
        return Err(Error::domain(format!("{} encodes no logical qudits", code.name())));
    }
    let w_max = w_max.min(code.n());
    budget.check(
        cumulative_pattern_count(code.field(), code.n(), w_max),
        "distance search",
    )?;
    let table = KeyTable::new(code)?;
    for w in 1..=w_max {
        let hit = (0..code.n()).into_par_iter().find_map_first(|first| {
            let found = table.scan_partition(w, first, &mut |support, locals, key| {
                if key.syn == 0 && key.log != 0 {
                    ControlFlow::Break(table.pattern_to_pauli(support, locals))
                } else {
                    ControlFlow::Continue(())
                }
            });
            match found {
                ControlFlow::Break(v) => Some(v),
                ControlFlow::Continue(()) => None,
            }
        });
        if let Some(witness) = hit {
            return Ok(MinWeight::Exact { d: w, witness });
        }
    }
    Ok(MinWeight::NoLogicalBelow(w_max + 1))
}
