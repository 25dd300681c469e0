use std::fmt;

use crate::error::{Error, Result};

/// A set of players encoded as a bitmask over 0-based player indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn grand(n: usize) -> Coalition {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Coalition {
        Coalition(1 << i)
    }

    pub fn from_players(players: &[usize]) -> Coalition {
        Coalition(players.iter().fold(0, |m, &i| m | (1 << i)))
    }

    /// Builds a coalition from 1-based player ids, as used in files and on the command line.
    pub fn from_ids(ids: &[usize], n: usize) -> Result<Coalition> {
        let mut mask = 0u32;
        for &id in ids {
            if id == 0 || id > n {
                return Err(Error::InvalidArgument(format!(
                    "player id {id} outside 1..={n}"
                )));
            }
            mask |= 1 << (id - 1);
        }
        Ok(Coalition(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Coalition {
        Coalition(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Coalition {
        Coalition(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Coalition {
        Coalition(self.0 & !(1 << i))
    }

    /// Player indices in ascending order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// All subsets of this coalition (including the empty set and itself) in ascending mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// 1-based ids joined by commas, e.g. `"2,3"`; empty string for the empty coalition.
    pub fn key(self) -> String {
        self.members()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

#[derive(Debug, Clone)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Subset enumeration via the `(sub - universe) & universe` trick, ascending.
#[derive(Debug, Clone)]
pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some((cur.wrapping_sub(self.universe)) & self.universe)
        };
        Some(Coalition(cur))
    }
}
