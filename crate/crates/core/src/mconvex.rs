//! The integer core as an M-convex set.
//!
//! For a supermodular `v` the core is the set of integer points of the base polyhedron
//! `B(v)`. This module enumerates it, searches it by 1-tightening steps, builds the
//! canonical chain and partition that describe its dec-min elements, and assembles the
//! Lorenz stable set.

use crate::budget::{Budget, Meter};
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{lift, marginal_vector, require_supermodular, Game};
use crate::orders::lorenz_filter;
use crate::payoff::{PayoffVector, VectorSet};

/// Why a vector fails core membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreViolation {
    /// `x(S) ≠ v(S)` for the coalition itself.
    Efficiency { paid: i128, worth: i64 },
    /// `x(T) < v(T)` for a proper subcoalition `T` (original player indices).
    Blocking {
        coalition: Coalition,
        paid: i128,
        worth: i64,
    },
}

/// Partial sums `x(T)` for every local mask `T`, indexed by mask.
fn subset_sums(x: &[i64]) -> Vec<i128> {
    let mut sums = vec![0i128; 1 << x.len()];
    for m in 1..sums.len() {
        let low = m.trailing_zeros() as usize;
        sums[m] = sums[m & (m - 1)] + x[low] as i128;
    }
    sums
}

/// First violated core constraint of `x` (indexed over the members of `s`), if any.
///
/// Efficiency is checked first; blocking coalitions are scanned in ascending mask order.
pub fn core_violation(g: &Game, s: Coalition, x: &PayoffVector) -> Result<Option<CoreViolation>> {
    g.check_coalition(s)?;
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    x.expect_len(s.len())?;
    let players: Vec<usize> = s.members().collect();
    let sums = subset_sums(&x.0);
    let top = sums.len() - 1;
    let worth = g.worth(s);
    if sums[top] != worth as i128 {
        return Ok(Some(CoreViolation::Efficiency {
            paid: sums[top],
            worth,
        }));
    }
    let whole = s == g.grand();
    for local in 1..top {
        let t = if whole {
            Coalition(local as u32)
        } else {
            lift(Coalition(local as u32), &players)
        };
        if sums[local] < g.worth(t) as i128 {
            return Ok(Some(CoreViolation::Blocking {
                coalition: t,
                paid: sums[local],
                worth: g.worth(t),
            }));
        }
    }
    Ok(None)
}

/// `x(s) = v(s)` and `x(T) ≥ v(T)` for every `T ⊊ s`; `x` is indexed over the members of `s`.
pub fn core_membership(g: &Game, s: Coalition, x: &PayoffVector) -> Result<bool> {
    Ok(core_violation(g, s, x)?.is_none())
}

/// Depth-first enumeration of the integer core of `h` (over all of its players).
///
/// Player `d` ranges over `v({d}) ≤ x_d ≤ v(N) − v(N∖{d})`. When player `d` is fixed,
/// every subset `T` of the assigned players whose largest member is `d` is checked against
/// `v(T) ≤ x(T) ≤ v(N) − v(N∖T)`; both sides are core constraints, so the pruning is exact.
fn enumerate_core(h: &Game, meter: &mut Meter) -> Result<Vec<PayoffVector>> {
    let n = h.n();
    let full = h.grand();
    let total = h.worth(full) as i128;
    let lo: Vec<i128> = (0..n)
        .map(|i| h.worth(Coalition::singleton(i)) as i128)
        .collect();
    let hi: Vec<i128> = (0..n)
        .map(|i| total - h.worth(full.without(i)) as i128)
        .collect();
    if (0..n).any(|i| lo[i] > hi[i]) {
        return Ok(Vec::new());
    }

    struct Search<'a> {
        h: &'a Game,
        n: usize,
        total: i128,
        lo: Vec<i128>,
        hi: Vec<i128>,
        sums: Vec<i128>,
        x: Vec<i64>,
        out: Vec<PayoffVector>,
    }

    impl Search<'_> {
        /// Fixes `x_d = val` and checks the constraints whose largest member is `d`.
        fn assign(&mut self, d: usize, val: i128) -> bool {
            let full = self.h.grand();
            let bit = 1usize << d;
            for m in 0..bit {
                let t = m | bit;
                let s = self.sums[m] + val;
                self.sums[t] = s;
                let upper = self.total - self.h.worth(full.difference(Coalition(t as u32))) as i128;
                if s < self.h.worth(Coalition(t as u32)) as i128 || s > upper {
                    return false;
                }
            }
            self.x[d] = val as i64;
            true
        }

        fn descend(&mut self, d: usize, meter: &mut Meter) -> Result<()> {
            let assigned = self.sums[(1 << d) - 1];
            if d == self.n - 1 {
                meter.tick()?;
                let last = self.total - assigned;
                if last >= self.lo[d] && last <= self.hi[d] && self.assign(d, last) {
                    self.out.push(PayoffVector(self.x.clone()));
                }
                return Ok(());
            }
            let mut val = self.lo[d];
            while val <= self.hi[d] {
                meter.tick()?;
                if self.assign(d, val) {
                    self.descend(d + 1, meter)?;
                }
                val += 1;
            }
            Ok(())
        }
    }

    let mut search = Search {
        h,
        n,
        total,
        lo,
        hi,
        sums: vec![0; 1 << n],
        x: vec![0; n],
        out: Vec::new(),
    };
    search.descend(0, meter)?;
    Ok(search.out)
}

/// All integer points of the core of `s`, as vectors over the members of `s`, in canonical order.
pub fn core_enumerate(g: &Game, s: Coalition, budget: Budget) -> Result<VectorSet> {
    g.check_coalition(s)?;
    let h = g.subgame(s)?;
    let mut meter = budget.meter();
    Ok(VectorSet::from_vectors(enumerate_core(&h, &mut meter)?))
}

/// A unit transfer: player `i` receives one unit from player `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tightening {
    pub i: usize,
    pub j: usize,
}

/// A 1-tightening step available at core point `x`, if any.
///
/// Candidates `(i, j)` with `x_j ≥ x_i + 2` are tried by decreasing gap `x_j − x_i`,
/// then by ascending `(j, i)`; the first whose result stays in the core is returned.
pub fn find_tightening(g: &Game, x: &PayoffVector) -> Result<Option<Tightening>> {
    x.expect_len(g.n())?;
    let sums = subset_sums(&x.0);
    let top = sums.len() - 1;
    let in_core = sums[top] == g.worth(g.grand()) as i128
        && (1..top).all(|m| sums[m] >= g.worth(Coalition(m as u32)) as i128);
    if !in_core {
        return Err(Error::NotInCore);
    }
    Ok(tightening_from_sums(g, x, &sums))
}

/// `x` must be in the core with `sums` its subset sums. Moving a unit from `j` to `i`
/// only lowers `x(T)` for the coalitions with `j ∈ T`, `i ∉ T`, so those are the
/// constraints re-evaluated.
fn tightening_from_sums(g: &Game, x: &PayoffVector, sums: &[i128]) -> Option<Tightening> {
    let n = g.n();
    let mut candidates = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let gap = x.0[j] as i128 - x.0[i] as i128;
            if gap >= 2 {
                candidates.push((gap, j, i));
            }
        }
    }
    candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let full = g.grand();
    candidates.into_iter().find_map(|(_, j, i)| {
        let rest = full.without(i).without(j);
        let stays = rest.subsets().all(|q| {
            let t = q.with(j);
            sums[t.0 as usize] > g.worth(t) as i128
        });
        stays.then_some(Tightening { i, j })
    })
}

/// A dec-min core element reached by 1-tightening steps from the identity-order marginal vector.
///
/// Each step lowers `Σ x_i²` at a fixed sum, so the loop terminates.
pub fn dec_min_by_tightening(g: &Game) -> Result<PayoffVector> {
    require_supermodular(g)?;
    let order: Vec<usize> = (0..g.n()).collect();
    let mut x = marginal_vector(g, &order)?;
    if !core_membership(g, g.grand(), &x)? {
        return Err(Error::Invariant(
            "marginal vector of a supermodular game left the core".into(),
        ));
    }
    while let Some(t) = tightening_from_sums(g, &x, &subset_sums(&x.0)) {
        x = x.transfer(t.i, t.j)?;
    }
    Ok(x)
}

/// Essential value-sequence with the canonical chain and partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    /// `β_1 > β_2 > … > β_q`.
    pub beta: Vec<i64>,
    /// `C_1 ⊊ … ⊊ C_q = N`.
    pub chain: Vec<Coalition>,
    /// `S_k = C_k ∖ C_{k−1}`.
    pub partition: Vec<Coalition>,
}

impl CanonicalDecomposition {
    fn from_chain(beta: Vec<i64>, chain: Vec<Coalition>) -> Self {
        let mut prev = Coalition::EMPTY;
        let partition = chain
            .iter()
            .map(|&c| {
                let s = c.difference(prev);
                prev = c;
                s
            })
            .collect();
        CanonicalDecomposition {
            beta,
            chain,
            partition,
        }
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    /// The block index `k` (0-based) with `i ∈ S_k`.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.partition.iter().position(|s| s.contains(i))
    }

    /// Checks the structural invariants against the game `g`.
    pub fn validate(&self, g: &Game) -> Result<()> {
        let bad = |m: &str| Err(Error::Invariant(m.to_string()));
        if self.beta.windows(2).any(|w| w[0] <= w[1]) {
            return bad("essential values not strictly decreasing");
        }
        if self.chain.last() != Some(&g.grand()) {
            return bad("canonical chain does not end at the grand coalition");
        }
        let mut prev = Coalition::EMPTY;
        for (c, s) in self.chain.iter().zip(&self.partition) {
            if !prev.is_subset_of(*c) || prev == *c || s.is_empty() || c.difference(prev) != *s {
                return bad("chain and partition are inconsistent");
            }
            prev = *c;
        }
        Ok(())
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

/// Smallest maximizer of `score` over the subsets of `universe`.
///
/// The maximizers of a supermodular objective are closed under intersection, so their
/// intersection must itself be a maximizer and is then the unique smallest one.
fn smallest_maximizer(universe: Coalition, score: impl Fn(Coalition) -> i128) -> Result<Coalition> {
    let mut best: Option<i128> = None;
    let mut meet = universe;
    for x in universe.subsets() {
        let val = score(x);
        match best {
            Some(b) if val < b => {}
            Some(b) if val == b => meet = meet.intersection(x),
            _ => {
                best = Some(val);
                meet = x;
            }
        }
    }
    if Some(score(meet)) != best {
        return Err(Error::Invariant(format!(
            "maximizers are not closed under intersection within {universe}"
        )));
    }
    Ok(meet)
}

/// Canonical chain and partition by the iterative construction:
/// `β_k = max ⌈(g(X∪C_{k−1}) − g(C_{k−1}))/|X|⌉`, then `S_k` is the smallest maximizer of
/// `h_k(X) = g(X∪C_{k−1}) − (β_k − 1)|X| − g(C_{k−1})` over `X ⊆ N∖C_{k−1}`.
pub fn canonical_decomposition(g: &Game) -> Result<CanonicalDecomposition> {
    require_supermodular(g)?;
    let full = g.grand();
    let mut beta = Vec::new();
    let mut chain = Vec::new();
    let mut done = Coalition::EMPTY;
    while done != full {
        let rest = full.difference(done);
        let base = g.worth(done) as i128;
        let gain = |x: Coalition| g.worth(x.union(done)) as i128 - base;
        let b = rest
            .subsets()
            .filter(|x| !x.is_empty())
            .map(|x| ceil_div(gain(x), x.len() as i128))
            .max()
            .expect("remaining set is nonempty");
        let block = smallest_maximizer(rest, |x| gain(x) - (b - 1) * x.len() as i128)?;
        if block.is_empty() {
            return Err(Error::Invariant(format!(
                "empty block at essential value {b}"
            )));
        }
        if let Some(&prev) = beta.last() {
            if to_i64(b)? >= prev {
                return Err(Error::Invariant("essential values not decreasing".into()));
            }
        }
        beta.push(to_i64(b)?);
        done = done.union(block);
        chain.push(done);
    }
    let d = CanonicalDecomposition::from_chain(beta, chain);
    d.validate(g)?;
    Ok(d)
}

/// Canonical chain by thresholds: `L(β)` is the smallest maximizer of `g(X) − β|X|`,
/// the essential values are the `β` with `L(β) ≠ L(β − 1)`, and `C_k = L(β_k − 1)`.
///
/// The breakpoints of the monotone map `β ↦ L(β)` are located by bisection.
pub fn canonical_decomposition_by_threshold(g: &Game) -> Result<CanonicalDecomposition> {
    require_supermodular(g)?;
    let full = g.grand();
    let n = g.n() as i128;
    let level =
        |beta: i128| smallest_maximizer(full, |x| g.worth(x) as i128 - beta * x.len() as i128);

    // at `hi` every nonempty X scores ≤ 0, so L(hi) = ∅
    let hi = full
        .subsets()
        .filter(|x| !x.is_empty())
        .map(|x| ceil_div(g.worth(x) as i128, x.len() as i128))
        .max()
        .expect("n ≥ 1");
    // below `lo + 1` the grand coalition strictly beats every other X, so L(lo) = N
    let lo = full
        .subsets()
        .filter(|&x| x != full)
        .map(|x| {
            let num = g.worth(full) as i128 - g.worth(x) as i128;
            (num).div_euclid(n - x.len() as i128)
        })
        .min()
        .expect("the empty set is a proper subset")
        - 1;

    let (l_lo, l_hi) = (level(lo)?, level(hi)?);
    if l_lo != full || !l_hi.is_empty() {
        return Err(Error::Invariant(
            "threshold bracket does not span ∅..N".into(),
        ));
    }

    // breakpoints as (β, L(β − 1))
    let mut breaks: Vec<(i128, Coalition)> = Vec::new();
    let mut stack = vec![(lo, l_lo, hi, l_hi)];
    while let Some((a, la, b, lb)) = stack.pop() {
        if la == lb {
            continue;
        }
        if !lb.is_subset_of(la) {
            return Err(Error::Invariant("L(β) is not monotone in β".into()));
        }
        if b == a + 1 {
            breaks.push((b, la));
            continue;
        }
        let mid = a + (b - a) / 2;
        let lm = level(mid)?;
        stack.push((a, la, mid, lm));
        stack.push((mid, lm, b, lb));
    }
    breaks.sort_unstable_by_key(|b| std::cmp::Reverse(b.0));
    let beta = breaks
        .iter()
        .map(|&(b, _)| to_i64(b))
        .collect::<Result<Vec<_>>>()?;
    let chain = breaks.iter().map(|&(_, c)| c).collect();
    let d = CanonicalDecomposition::from_chain(beta, chain);
    d.validate(g)?;
    Ok(d)
}

/// Dec-min elements of the core as the direct sum of the per-block sets `B_k ∩ T_k`.
///
/// Block `k` uses `g_k(X) = g(X ∪ C_{k−1}) − g(C_{k−1})` on `S_k` and the box
/// `β_k − 1 ≤ x_i ≤ β_k`.
pub fn dec_min_set_structural(g: &Game, budget: Budget) -> Result<VectorSet> {
    let decomposition = canonical_decomposition(g)?;
    dec_min_set_from(g, &decomposition, budget)
}

pub fn dec_min_set_from(
    g: &Game,
    decomposition: &CanonicalDecomposition,
    budget: Budget,
) -> Result<VectorSet> {
    let mut meter = budget.meter();
    let mut prev = Coalition::EMPTY;
    let mut blocks: Vec<(Vec<usize>, Vec<Vec<i64>>)> = Vec::new();
    for (&b, &s) in decomposition.beta.iter().zip(&decomposition.partition) {
        let players: Vec<usize> = s.members().collect();
        let base = g.worth(prev) as i128;
        let block_worth = |local: usize| {
            g.worth(lift(Coalition(local as u32), &players).union(prev)) as i128 - base
        };
        let k = players.len();
        let mut members = Vec::new();
        for bits in 0..1usize << k {
            meter.tick()?;
            let x: Vec<i64> = (0..k)
                .map(|t| if bits >> t & 1 == 1 { b } else { b - 1 })
                .collect();
            let sums = subset_sums(&x);
            let top = sums.len() - 1;
            if sums[top] == block_worth(top) && (1..top).all(|m| sums[m] >= block_worth(m)) {
                members.push(x);
            }
        }
        blocks.push((players, members));
        prev = prev.union(s);
    }

    let mut out: Vec<Vec<i64>> = vec![vec![0; g.n()]];
    for (players, members) in &blocks {
        let mut next = Vec::with_capacity(out.len() * members.len());
        for partial in &out {
            for m in members {
                meter.tick()?;
                let mut x = partial.clone();
                for (&p, &val) in players.iter().zip(m) {
                    x[p] = val;
                }
                next.push(x);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(PayoffVector).collect())
}

/// The Lorenz stable set computed purely as the Lorenz filter of the enumerated core.
pub fn lss_by_filter(g: &Game, budget: Budget) -> Result<VectorSet> {
    lorenz_filter(&core_enumerate(g, g.grand(), budget)?)
}

/// Core elements not Lorenz-dominated by any other core element.
///
/// For supermodular games the filter result is checked against the structural dec-min
/// set; disagreement is reported as an internal error. Other games fall back to the filter.
pub fn lss(g: &Game, budget: Budget) -> Result<VectorSet> {
    let filtered = lss_by_filter(g, budget)?;
    if crate::game::is_supermodular(g).holds {
        let structural = dec_min_set_structural(g, budget)?;
        if structural != filtered {
            return Err(Error::Invariant(format!(
                "Lorenz filter {filtered} disagrees with structural dec-min set {structural}"
            )));
        }
    }
    Ok(filtered)
}
