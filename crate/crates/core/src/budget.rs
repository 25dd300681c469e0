use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Upper bound on the number of candidate points an enumeration may visit.
///
/// Every partial or complete assignment produced by a search counts as one
/// candidate, so pruned branches are charged for the work actually done.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    pub fn meter(self) -> Meter {
        Meter {
            limit: self.0,
            used: 0,
        }
    }
}

#[derive(Debug)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_fails_past_limit() {
        let mut m = Budget(2).meter();
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert_eq!(m.tick(), Err(Error::BudgetExceeded(2)));
    }
}
