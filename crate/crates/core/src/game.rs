//! Games with integer characteristic functions over bitmask-indexed coalitions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalition::Coalition;
use crate::error::{checked_add, checked_sub, Error, Result};
use crate::payoff::PayoffVector;

pub const MAX_PLAYERS: usize = 16;

/// A cooperative game `(N, v)` with `v(∅) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Game {
    n: usize,
    worth: Vec<i64>,
}

impl Game {
    /// `worth[mask]` is `v` of the coalition with that mask; `worth[0]` must be 0.
    pub fn new(n: usize, worth: Vec<i64>) -> Result<Game> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        if worth.len() != 1 << n {
            return Err(Error::WorthTableSize {
                expected: 1 << n,
                got: worth.len(),
            });
        }
        if worth[0] != 0 {
            return Err(Error::NonzeroEmptyWorth(worth[0]));
        }
        Ok(Game { n, worth })
    }

    /// Builds a game by evaluating `f` on every nonempty coalition.
    pub fn from_fn(n: usize, mut f: impl FnMut(Coalition) -> i64) -> Result<Game> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        let worth = (0..1u32 << n)
            .map(|m| if m == 0 { 0 } else { f(Coalition(m)) })
            .collect();
        Game::new(n, worth)
    }

    /// The additive game `v(S) = Σ_{i∈S} a_i`.
    pub fn additive(a: &[i64]) -> Result<Game> {
        let mut overflow = false;
        let g = Game::from_fn(a.len(), |s| {
            s.members()
                .try_fold(0i64, |acc, i| acc.checked_add(a[i]))
                .unwrap_or_else(|| {
                    overflow = true;
                    0
                })
        })?;
        if overflow {
            return Err(Error::Overflow);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    #[inline]
    pub fn worth(&self, s: Coalition) -> i64 {
        self.worth[s.0 as usize]
    }

    pub fn worths(&self) -> &[i64] {
        &self.worth
    }

    pub fn check_coalition(&self, s: Coalition) -> Result<()> {
        if s.0 as u64 >= 1u64 << self.n {
            return Err(Error::CoalitionOutOfRange {
                mask: s.0,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The game `v|_s` on the members of `s`, re-indexed `0..|s|` in ascending original order.
    pub fn subgame(&self, s: Coalition) -> Result<Game> {
        self.check_coalition(s)?;
        if s.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        let players: Vec<usize> = s.members().collect();
        Game::from_fn(players.len(), |t| self.worth(lift(t, &players)))
    }
}

/// Maps a coalition over local indices `0..players.len()` back to original player indices.
pub fn lift(local: Coalition, players: &[usize]) -> Coalition {
    Coalition(local.members().fold(0, |m, k| m | 1 << players[k]))
}

/// Verdict of a supermodularity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupermodularityReport {
    pub holds: bool,
    /// Lexicographically first `(S, T)` with `v(S) + v(T) > v(S∪T) + v(S∩T)`.
    pub witness: Option<(Coalition, Coalition)>,
}

fn violates(g: &Game, s: Coalition, t: Coalition) -> bool {
    let lhs = g.worth(s) as i128 + g.worth(t) as i128;
    let rhs = g.worth(s.union(t)) as i128 + g.worth(s.intersection(t)) as i128;
    lhs > rhs
}

pub fn is_supermodular(g: &Game) -> SupermodularityReport {
    // Local exchange inequalities are equivalent to global supermodularity and much cheaper.
    let full = g.grand();
    let mut local_ok = true;
    'outer: for base in full.subsets() {
        let free: Vec<usize> = full.difference(base).members().collect();
        for (a, &i) in free.iter().enumerate() {
            for &j in &free[a + 1..] {
                if violates(g, base.with(i), base.with(j)) {
                    local_ok = false;
                    break 'outer;
                }
            }
        }
    }
    if local_ok {
        return SupermodularityReport {
            holds: true,
            witness: None,
        };
    }
    for s in full.subsets() {
        for t in full.subsets() {
            if violates(g, s, t) {
                return SupermodularityReport {
                    holds: false,
                    witness: Some((s, t)),
                };
            }
        }
    }
    unreachable!("local violation implies a global one")
}

pub(crate) fn require_supermodular(g: &Game) -> Result<()> {
    match is_supermodular(g).witness {
        None => Ok(()),
        Some((s, t)) => Err(Error::NotSupermodular { s: s.0, t: t.0 }),
    }
}

/// `x ≥ 0` componentwise and `x(N) ≤ v(N)`.
pub fn is_feasible_payoff(g: &Game, x: &PayoffVector) -> Result<bool> {
    x.expect_len(g.n())?;
    Ok(x.0.iter().all(|&v| v >= 0) && x.sum()? <= g.worth(g.grand()))
}

/// Individually rational and efficient.
pub fn is_imputation(g: &Game, x: &PayoffVector) -> Result<bool> {
    x.expect_len(g.n())?;
    let rational = (0..g.n()).all(|i| x.0[i] >= g.worth(Coalition::singleton(i)));
    Ok(rational && x.sum()? == g.worth(g.grand()))
}

/// A reduced game together with the original indices of its players.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGame {
    pub game: Game,
    /// `players[k]` is the original index of local player `k`.
    pub players: Vec<usize>,
    pub coalition: Coalition,
}

/// The Davis–Maschler reduced game `(S, v^x_S)`.
///
/// `v^x_S(S) = v(N) − x(N∖S)` and, for `∅ ≠ T ⊊ S`,
/// `v^x_S(T) = max_{Q ⊆ N∖S} v(T∪Q) − x(Q)`. Defined for any `x`.
pub fn reduced_game(g: &Game, s: Coalition, x: &PayoffVector) -> Result<ReducedGame> {
    g.check_coalition(s)?;
    x.expect_len(g.n())?;
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    let full = g.grand();
    if s == full {
        return Err(Error::GrandCoalition);
    }
    let outside = full.difference(s);
    let players: Vec<usize> = s.members().collect();

    // x(Q) for every Q ⊆ N∖S
    let mut paid = Vec::with_capacity(1 << outside.len());
    for q in outside.subsets() {
        paid.push((q, x.coalition_sum(q)?));
    }

    let k = players.len();
    let mut worth = vec![0i64; 1 << k];
    let top = (1usize << k) - 1;
    worth[top] = checked_sub(g.worth(full), x.coalition_sum(outside)?)?;
    for local in 1..top {
        let t = lift(Coalition(local as u32), &players);
        let mut best: Option<i64> = None;
        for &(q, xq) in &paid {
            let val = checked_sub(g.worth(t.union(q)), xq)?;
            best = Some(best.map_or(val, |b: i64| b.max(val)));
        }
        worth[local] = best.expect("Q = ∅ always present");
    }
    Ok(ReducedGame {
        game: Game::new(k, worth)?,
        players,
        coalition: s,
    })
}

/// Greedy marginal-contribution vector along `order` (0-based players).
pub fn marginal_vector(g: &Game, order: &[usize]) -> Result<PayoffVector> {
    let n = g.n();
    if order.len() != n {
        return Err(Error::NotPermutation);
    }
    let mut seen = Coalition::EMPTY;
    for &i in order {
        if i >= n || seen.contains(i) {
            return Err(Error::NotPermutation);
        }
        seen = seen.with(i);
    }
    let mut x = vec![0i64; n];
    let mut prefix = Coalition::EMPTY;
    for &i in order {
        let next = prefix.with(i);
        x[i] = checked_sub(g.worth(next), g.worth(prefix))?;
        prefix = next;
    }
    Ok(PayoffVector(x))
}

/// How the pairwise-and-higher synergy weights `w_T` of a generated game are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Synergy {
    /// `w_T` uniform in `[0, b]`: always supermodular.
    Nonnegative,
    /// `w_T` uniform in `[−b, b]`: usually not supermodular.
    Signed,
    /// `w_T = 0`: additive game.
    Zero,
}

/// Seeded generator of games `v(S) = Σ_{i∈S} a_i + Σ_{T⊆S, |T|≥2} w_T`, with `a_i` uniform in `[−b, b]`.
#[derive(Debug, Clone, Copy)]
pub struct GameGenerator {
    pub seed: u64,
    pub n: usize,
    pub weight_bound: i64,
    pub synergy: Synergy,
}

impl GameGenerator {
    pub fn generate(&self) -> Result<Game> {
        let (n, b) = (self.n, self.weight_bound);
        if !(2..=8).contains(&n) {
            return Err(Error::PlayerCount(n));
        }
        if b < 1 {
            return Err(Error::InvalidArgument(format!(
                "weight bound must be at least 1, got {b}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut w = vec![0i64; 1 << n];
        for i in 0..n {
            w[1 << i] = rng.gen_range(-b..=b);
        }
        for (mask, slot) in w.iter_mut().enumerate() {
            if (mask as u32).count_ones() < 2 {
                continue;
            }
            *slot = match self.synergy {
                Synergy::Nonnegative => rng.gen_range(0..=b),
                Synergy::Signed => rng.gen_range(-b..=b),
                Synergy::Zero => 0,
            };
        }
        // zeta transform: v(S) = Σ_{T⊆S} w_T
        for i in 0..n {
            for mask in 0..1usize << n {
                if mask >> i & 1 == 1 {
                    w[mask] = checked_add(w[mask], w[mask ^ 1 << i])?;
                }
            }
        }
        Game::new(n, w)
    }
}

/// Deterministic supermodular fixture: modular part plus nonnegative synergies.
pub fn random_supermodular_game(seed: u64, n: usize, weight_bound: i64) -> Result<Game> {
    GameGenerator {
        seed,
        n,
        weight_bound,
        synergy: Synergy::Nonnegative,
    }
    .generate()
}

/// Deterministic fixture with signed synergies; typically not supermodular.
pub fn random_game(seed: u64, n: usize, weight_bound: i64) -> Result<Game> {
    GameGenerator {
        seed,
        n,
        weight_bound,
        synergy: Synergy::Signed,
    }
    .generate()
}
