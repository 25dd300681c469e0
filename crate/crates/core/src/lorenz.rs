//! Lorenz cores, discrete egalitarian solutions, and the continuous egalitarian solution
//! of a convex game in exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::budget::{Budget, Meter};
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{lift, require_supermodular, Game};
use crate::orders::lorenz_filter;
use crate::payoff::{PayoffVector, RationalPayoffVector, VectorSet};

/// `L(S)` and `E(L(S))` for one coalition; vectors are indexed over the members of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LorenzCoreEntry {
    pub coalition: Coalition,
    pub core: VectorSet,
    pub egalitarian: VectorSet,
}

/// Lorenz cores of every nonempty subcoalition of a root coalition.
#[derive(Debug, Clone)]
pub struct LorenzCoreTable {
    root: Coalition,
    entries: Vec<Option<LorenzCoreEntry>>,
}

impl LorenzCoreTable {
    pub fn root(&self) -> Coalition {
        self.root
    }

    pub fn get(&self, s: Coalition) -> Option<&LorenzCoreEntry> {
        self.entries.get(s.0 as usize).and_then(Option::as_ref)
    }

    /// Entries in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = &LorenzCoreEntry> {
        self.entries.iter().flatten()
    }
}

/// `y > x_T` in the componentwise order: all `≥`, some `>`.
fn strictly_above(y: &[i64], x_t: impl Iterator<Item = i64>) -> bool {
    let mut strict = false;
    for (&a, b) in y.iter().zip(x_t) {
        if a < b {
            return false;
        }
        strict |= a > b;
    }
    strict
}

/// Enumerates `L(s)` given `E(L(T))` for every proper nonempty `T ⊊ s`.
///
/// Candidates satisfy `x(s) = v(s)` and `v({i}) ≤ x_i ≤ v(s) − Σ_{j≠i} v({j})`. A candidate
/// is excluded as soon as the players of some `T` are all assigned and some
/// `y ∈ E(L(T))` lies strictly above `x_T`.
fn enumerate_lorenz_core(
    g: &Game,
    s: Coalition,
    table: &[Option<LorenzCoreEntry>],
    meter: &mut Meter,
) -> Result<Vec<PayoffVector>> {
    let players: Vec<usize> = s.members().collect();
    let k = players.len();
    let total = g.worth(s) as i128;
    let lo: Vec<i128> = players
        .iter()
        .map(|&i| g.worth(Coalition::singleton(i)) as i128)
        .collect();
    let lo_sum: i128 = lo.iter().sum();
    let hi: Vec<i128> = lo.iter().map(|&l| total - (lo_sum - l)).collect();
    if lo_sum > total {
        return Ok(Vec::new());
    }

    // blockers[d]: for each local T whose largest member is d (T ≠ s), the E(L(T)) vectors
    let mut blockers: Vec<Vec<(usize, &VectorSet)>> = vec![Vec::new(); k];
    for local in 1..(1usize << k) - 1 {
        let t = lift(Coalition(local as u32), &players);
        let entry = table[t.0 as usize]
            .as_ref()
            .expect("subcoalitions are computed first");
        let top = usize::BITS as usize - 1 - local.leading_zeros() as usize;
        blockers[top].push((local, &entry.egalitarian));
    }

    struct Search<'a> {
        k: usize,
        total: i128,
        lo: Vec<i128>,
        hi: Vec<i128>,
        blockers: Vec<Vec<(usize, &'a VectorSet)>>,
        x: Vec<i64>,
        out: Vec<PayoffVector>,
    }

    impl Search<'_> {
        fn blocked(&self, d: usize) -> bool {
            self.blockers[d].iter().any(|&(local, egal)| {
                egal.iter().any(|y| {
                    strictly_above(&y.0, Coalition(local as u32).members().map(|i| self.x[i]))
                })
            })
        }

        fn descend(&mut self, d: usize, assigned: i128, meter: &mut Meter) -> Result<()> {
            if d == self.k - 1 {
                meter.tick()?;
                let last = self.total - assigned;
                if last >= self.lo[d] && last <= self.hi[d] {
                    self.x[d] = last as i64;
                    if !self.blocked(d) {
                        self.out.push(PayoffVector(self.x.clone()));
                    }
                }
                return Ok(());
            }
            let mut val = self.lo[d];
            while val <= self.hi[d] {
                meter.tick()?;
                self.x[d] = val as i64;
                if !self.blocked(d) {
                    self.descend(d + 1, assigned + val, meter)?;
                }
                val += 1;
            }
            Ok(())
        }
    }

    let mut search = Search {
        k,
        total,
        lo,
        hi,
        blockers,
        x: vec![0; k],
        out: Vec::new(),
    };
    search.descend(0, 0, meter)?;
    Ok(search.out)
}

/// Computes `L(T)` and `E(L(T))` bottom-up by cardinality for every nonempty `T ⊆ s`.
///
/// No convexity is required; `L({i}) = {v({i})}` is the base case.
pub fn lorenz_core_table(g: &Game, s: Coalition, budget: Budget) -> Result<LorenzCoreTable> {
    g.check_coalition(s)?;
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    let mut meter = budget.meter();
    let mut entries: Vec<Option<LorenzCoreEntry>> = vec![None; s.0 as usize + 1];
    let mut order: Vec<Coalition> = s.subsets().filter(|t| !t.is_empty()).collect();
    order.sort_by_key(|t| (t.len(), t.0));
    for t in order {
        let core = if t.len() == 1 {
            VectorSet::from_vectors(vec![PayoffVector(vec![g.worth(t)])])
        } else {
            VectorSet::from_vectors(enumerate_lorenz_core(g, t, &entries, &mut meter)?)
        };
        let egalitarian = lorenz_filter(&core)?;
        entries[t.0 as usize] = Some(LorenzCoreEntry {
            coalition: t,
            core,
            egalitarian,
        });
    }
    Ok(LorenzCoreTable { root: s, entries })
}

/// The Lorenz core `L(s)`, as vectors over the members of `s`.
pub fn lorenz_core(g: &Game, s: Coalition, budget: Budget) -> Result<VectorSet> {
    let table = lorenz_core_table(g, s, budget)?;
    Ok(table.get(s).expect("root entry").core.clone())
}

/// The discrete egalitarian solutions `E(L(N))`.
pub fn egalitarian_set(g: &Game, budget: Budget) -> Result<VectorSet> {
    let table = lorenz_core_table(g, g.grand(), budget)?;
    Ok(table
        .get(g.grand())
        .expect("root entry")
        .egalitarian
        .clone())
}

/// One step of the continuous decomposition: a block and the common payoff of its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionStep {
    pub coalition: Coalition,
    pub average: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRun {
    pub steps: Vec<DecompositionStep>,
    pub solution: RationalPayoffVector,
}

impl DecompositionRun {
    /// Uniform payoffs within blocks, strictly decreasing averages across blocks, and
    /// tight partial sums `Σ_{l ≤ k} x*(S_l) = v(S_1 ∪ … ∪ S_k)`.
    pub fn validate(&self, g: &Game) -> Result<()> {
        let bad = |m: &str| Err(Error::Invariant(m.to_string()));
        if self.steps.windows(2).any(|w| w[0].average <= w[1].average) {
            return bad("block averages not strictly decreasing");
        }
        let mut union = Coalition::EMPTY;
        let mut paid = BigRational::zero();
        for step in &self.steps {
            if step
                .coalition
                .members()
                .any(|i| self.solution.0[i] != step.average)
            {
                return bad("payoffs not uniform within a block");
            }
            for i in step.coalition.members() {
                paid += &self.solution.0[i];
            }
            union = union.union(step.coalition);
            if paid != BigRational::from_integer(BigInt::from(g.worth(union))) {
                return bad("partial sums not tight");
            }
        }
        if union != g.grand() {
            return bad("blocks do not cover every player");
        }
        Ok(())
    }
}

/// Repeatedly takes the largest coalition of highest average worth in the game
/// `v_k(S) = v(D ∪ S) − v(D)` on the unassigned players, where `D` is the union of the
/// blocks chosen so far, and pays each of its members that average.
pub fn dutta_ray_decomposition(g: &Game) -> Result<DecompositionRun> {
    require_supermodular(g)?;
    let full = g.grand();
    let mut done = Coalition::EMPTY;
    let mut steps = Vec::new();
    let mut solution = vec![BigRational::zero(); g.n()];
    while done != full {
        let rest = full.difference(done);
        let base = BigInt::from(g.worth(done));
        let avg = |s: Coalition| {
            BigRational::new(
                BigInt::from(g.worth(s.union(done))) - &base,
                BigInt::from(s.len()),
            )
        };
        let mut best: Option<BigRational> = None;
        let mut tied: Vec<Coalition> = Vec::new();
        for s in rest.subsets().filter(|s| !s.is_empty()) {
            let a = avg(s);
            match &best {
                Some(b) if a < *b => {}
                Some(b) if a == *b => tied.push(s),
                _ => {
                    best = Some(a);
                    tied = vec![s];
                }
            }
        }
        let best = best.expect("remaining set is nonempty");
        let size = tied
            .iter()
            .map(|s| s.len())
            .max()
            .expect("at least one maximizer");
        let largest: Vec<Coalition> = tied.into_iter().filter(|s| s.len() == size).collect();
        if largest.len() != 1 {
            return Err(Error::Invariant(format!(
                "{} largest coalitions share the highest average",
                largest.len()
            )));
        }
        let block = largest[0];
        for i in block.members() {
            solution[i] = best.clone();
        }
        steps.push(DecompositionStep {
            coalition: block,
            average: best,
        });
        done = done.union(block);
    }
    let run = DecompositionRun {
        steps,
        solution: RationalPayoffVector(solution),
    };
    run.validate(g)?;
    Ok(run)
}
