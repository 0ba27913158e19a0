use std::time::{Duration, Instant};

use thiserror::Error;

/// How much work a single decision may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchBudget {
    /// Deterministic limit on visited nodes (MCTS: iterations).
    Nodes(u64),
    /// Wall-clock allowance measured from the start of the search.
    Time(Duration),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("search budget exhausted")]
pub struct BudgetExhausted;

/// Counts work against a [`SearchBudget`].
#[derive(Clone, Debug)]
pub struct Meter {
    budget: SearchBudget,
    start: Instant,
    used: u64,
}

impl Meter {
    pub fn new(budget: SearchBudget) -> Self {
        Self {
            budget,
            start: Instant::now(),
            used: 0,
        }
    }

    /// Units consumed so far.
    pub fn used(&self) -> u64 {
        self.used
    }

    /// Claims one unit of work.
    #[inline]
    pub fn spend(&mut self) -> Result<(), BudgetExhausted> {
        match self.budget {
            SearchBudget::Nodes(limit) => {
                if self.used >= limit {
                    return Err(BudgetExhausted);
                }
            }
            SearchBudget::Time(allowance) => {
                // checking the clock every node is measurable overhead
                if self.used.is_multiple_of(64) && self.start.elapsed() >= allowance {
                    return Err(BudgetExhausted);
                }
            }
        }
        self.used += 1;
        Ok(())
    }

    pub fn exhausted(&self) -> bool {
        match self.budget {
            SearchBudget::Nodes(limit) => self.used >= limit,
            SearchBudget::Time(allowance) => self.start.elapsed() >= allowance,
        }
    }
}
