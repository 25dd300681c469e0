use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player count {0} outside 1..=16")]
    PlayerCount(usize),
    #[error("worth table has {got} entries, expected {expected}")]
    WorthTableSize { expected: usize, got: usize },
    #[error("worth of the empty coalition must be 0, got {0}")]
    NonzeroEmptyWorth(i64),
    #[error("coalition mask {mask:#x} out of range for {n} players")]
    CoalitionOutOfRange { mask: u32, n: usize },
    #[error("coalition must be nonempty")]
    EmptyCoalition,
    #[error("coalition must be a proper subset of the player set")]
    GrandCoalition,
    #[error("vector length {got} does not match expected length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector sums differ: {left} vs {right}")]
    SumMismatch { left: i128, right: i128 },
    #[error("order is not a permutation of the players")]
    NotPermutation,
    #[error("game is not supermodular (violated by coalitions {s:#x} and {t:#x})")]
    NotSupermodular { s: u32, t: u32 },
    #[error("payoff vector is not in the core")]
    NotInCore,
    #[error("vector is not a member of the given set")]
    NotMember,
    #[error("enumeration budget of {0} candidate points exceeded")]
    BudgetExceeded(u64),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}
