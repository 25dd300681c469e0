//! Exhaustive checks of consistency properties on a single game.
//!
//! Each check walks payoff vectors in canonical order and coalitions `S` by ascending
//! complement `N∖S` (equivalently, descending mask), and stops at the first violation.
//! A [`Counterexample`] carries enough data to be re-derived from the game alone.

use std::fmt;

use crate::budget::Budget;
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{is_supermodular, reduced_game, require_supermodular, Game, ReducedGame};
use crate::lorenz::{egalitarian_set, lorenz_core_table};
use crate::mconvex::{core_enumerate, core_membership, lss};
use crate::orders::lorenz_dominates;
use crate::payoff::{PayoffVector, VectorSet};

pub const DEFAULT_CRGP_MARGIN: i64 = 2;

/// A solution concept that can be evaluated on any game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Solution {
    Core,
    Lss,
    Egalitarian,
}

impl Solution {
    pub fn evaluate(self, g: &Game, budget: Budget) -> Result<VectorSet> {
        match self {
            Solution::Core => core_enumerate(g, g.grand(), budget),
            Solution::Lss => lss(g, budget),
            Solution::Egalitarian => egalitarian_set(g, budget),
        }
    }

    /// Membership of `x` in the solution of `g`, using a direct core test where possible.
    pub fn contains(self, g: &Game, x: &PayoffVector, budget: Budget) -> Result<bool> {
        match self {
            Solution::Core => core_membership(g, g.grand(), x),
            Solution::Lss => Ok(core_membership(g, g.grand(), x)? && lss(g, budget)?.contains(x)),
            Solution::Egalitarian => Ok(egalitarian_set(g, budget)?.contains(x)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyKind {
    CoreRgp,
    LssRgp,
    EgaRgp,
    CoreCrgp,
    LssCrgp,
    ExternalStability,
    ReducedConvexity,
}

impl PropertyKind {
    pub fn name(self) -> &'static str {
        match self {
            PropertyKind::CoreRgp => "core-rgp",
            PropertyKind::LssRgp => "lss-rgp",
            PropertyKind::EgaRgp => "ega-rgp",
            PropertyKind::CoreCrgp => "core-crgp",
            PropertyKind::LssCrgp => "lss-crgp",
            PropertyKind::ExternalStability => "external-stability",
            PropertyKind::ReducedConvexity => "reduced-convexity",
        }
    }

    pub fn parse(name: &str) -> Option<PropertyKind> {
        use PropertyKind::*;
        [
            CoreRgp,
            LssRgp,
            EgaRgp,
            CoreCrgp,
            LssCrgp,
            ExternalStability,
            ReducedConvexity,
        ]
        .into_iter()
        .find(|p| p.name() == name)
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `x_S` is not in the solution of the reduced game `(S, v^x_S)`.
    Rgp {
        reduced: ReducedGame,
        restricted: PayoffVector,
        reduced_solution: VectorSet,
    },
    /// `x` passes the hypothesis on every two-player coalition yet is outside the solution.
    Crgp { pairs: Vec<Coalition> },
    /// `y ∈ L(N) ∖ E(L(N))` is not Lorenz-dominated by any egalitarian solution.
    NotDominated { egalitarian: VectorSet },
    /// The reduced game at a Lorenz stable point is not supermodular.
    ReducedNotSupermodular {
        reduced: ReducedGame,
        witness: (Coalition, Coalition),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub x: PayoffVector,
    pub coalition: Coalition,
    pub violation: Violation,
}

impl Counterexample {
    /// Rebuilds the violation from `g` and the stored `x`/`coalition`, and confirms it.
    pub fn recheck(&self, g: &Game, property: PropertyKind, budget: Budget) -> Result<bool> {
        match &self.violation {
            Violation::Rgp {
                reduced,
                restricted,
                ..
            } => {
                let solution = rgp_solution(property)?;
                let rebuilt = reduced_game(g, self.coalition, &self.x)?;
                Ok(&rebuilt == reduced
                    && self.x.restrict(self.coalition) == *restricted
                    && !solution.contains(&rebuilt.game, restricted, budget)?)
            }
            Violation::Crgp { pairs } => {
                let solution = crgp_solution(property)?;
                let mut hypothesis = true;
                for &s in pairs {
                    let r = reduced_game(g, s, &self.x)?;
                    hypothesis &= solution.contains(&r.game, &self.x.restrict(s), budget)?;
                }
                Ok(hypothesis && !solution.contains(g, &self.x, budget)?)
            }
            Violation::NotDominated { .. } => {
                let table = lorenz_core_table(g, g.grand(), budget)?;
                let root = table.get(g.grand()).expect("root entry");
                if !root.core.contains(&self.x) || root.egalitarian.contains(&self.x) {
                    return Ok(false);
                }
                for e in &root.egalitarian {
                    if lorenz_dominates(e, &self.x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Violation::ReducedNotSupermodular { .. } => {
                let rebuilt = reduced_game(g, self.coalition, &self.x)?;
                Ok(!is_supermodular(&rebuilt.game).holds)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    /// Number of `(x, S)` pairs or candidate vectors examined.
    pub checked: u64,
    /// Candidate-box margin used by converse checks.
    pub margin: Option<i64>,
    /// Set when the check was skipped as degenerate.
    pub note: Option<String>,
}

impl PropertyReport {
    fn new(property: PropertyKind) -> Self {
        PropertyReport {
            property,
            holds: true,
            counterexample: None,
            checked: 0,
            margin: None,
            note: None,
        }
    }

    fn refute(mut self, c: Counterexample) -> Self {
        self.holds = false;
        self.counterexample = Some(c);
        self
    }
}

/// Proper nonempty coalitions by ascending complement.
fn proper_coalitions(g: &Game) -> impl Iterator<Item = Coalition> {
    let full = g.grand();
    full.subsets()
        .map(move |c| full.difference(c))
        .filter(move |s| !s.is_empty() && *s != full)
}

fn rgp_solution(property: PropertyKind) -> Result<Solution> {
    match property {
        PropertyKind::CoreRgp => Ok(Solution::Core),
        PropertyKind::LssRgp | PropertyKind::ReducedConvexity => Ok(Solution::Lss),
        PropertyKind::EgaRgp => Ok(Solution::Egalitarian),
        other => Err(Error::InvalidArgument(format!(
            "{other} is not a reduced game property"
        ))),
    }
}

fn crgp_solution(property: PropertyKind) -> Result<Solution> {
    match property {
        PropertyKind::CoreCrgp => Ok(Solution::Core),
        PropertyKind::LssCrgp => Ok(Solution::Lss),
        other => Err(Error::InvalidArgument(format!(
            "{other} is not a converse reduced game property"
        ))),
    }
}

/// Reduced game property: for every `x` in the solution and every `∅ ≠ S ⊊ N`,
/// `x_S` belongs to the same solution of `(S, v^x_S)`.
pub fn verify_rgp(g: &Game, solution: Solution, budget: Budget) -> Result<PropertyReport> {
    let property = match solution {
        Solution::Core => PropertyKind::CoreRgp,
        Solution::Lss => PropertyKind::LssRgp,
        Solution::Egalitarian => PropertyKind::EgaRgp,
    };
    if solution != Solution::Core {
        require_supermodular(g)?;
    }
    let mut report = PropertyReport::new(property);
    for x in &solution.evaluate(g, budget)? {
        for s in proper_coalitions(g) {
            report.checked += 1;
            let reduced = reduced_game(g, s, x)?;
            let restricted = x.restrict(s);
            if !solution.contains(&reduced.game, &restricted, budget)? {
                let reduced_solution = solution.evaluate(&reduced.game, budget)?;
                return Ok(report.refute(Counterexample {
                    x: x.clone(),
                    coalition: s,
                    violation: Violation::Rgp {
                        reduced,
                        restricted,
                        reduced_solution,
                    },
                }));
            }
        }
    }
    Ok(report)
}

/// Every reduced game taken at a Lorenz stable point of a supermodular game is supermodular.
pub fn verify_reduced_convexity(g: &Game, budget: Budget) -> Result<PropertyReport> {
    require_supermodular(g)?;
    let mut report = PropertyReport::new(PropertyKind::ReducedConvexity);
    for x in &lss(g, budget)? {
        for s in proper_coalitions(g) {
            report.checked += 1;
            let reduced = reduced_game(g, s, x)?;
            if let Some(witness) = is_supermodular(&reduced.game).witness {
                return Ok(report.refute(Counterexample {
                    x: x.clone(),
                    coalition: s,
                    violation: Violation::ReducedNotSupermodular { reduced, witness },
                }));
            }
        }
    }
    Ok(report)
}

/// Integer vectors with `x(N) = v(N)` in the box `v({i}) − margin ≤ x_i ≤ v(N) − v(N∖{i}) + margin`.
fn efficient_box(g: &Game, margin: i64, budget: Budget) -> Result<Vec<PayoffVector>> {
    let n = g.n();
    let full = g.grand();
    let total = g.worth(full) as i128;
    let lo: Vec<i128> = (0..n)
        .map(|i| g.worth(Coalition::singleton(i)) as i128 - margin as i128)
        .collect();
    let hi: Vec<i128> = (0..n)
        .map(|i| total - g.worth(full.without(i)) as i128 + margin as i128)
        .collect();
    let mut meter = budget.meter();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];

    // suffix bounds prune assignments that cannot reach the total
    let mut min_rest = vec![0i128; n + 1];
    let mut max_rest = vec![0i128; n + 1];
    for i in (0..n).rev() {
        min_rest[i] = min_rest[i + 1] + lo[i];
        max_rest[i] = max_rest[i + 1] + hi[i];
    }

    fn rec(
        d: usize,
        assigned: i128,
        ctx: (&[i128], &[i128], &[i128], &[i128], i128),
        x: &mut Vec<i64>,
        out: &mut Vec<PayoffVector>,
        meter: &mut crate::budget::Meter,
    ) -> Result<()> {
        let (lo, hi, min_rest, max_rest, total) = ctx;
        let n = x.len();
        if d == n - 1 {
            meter.tick()?;
            let last = total - assigned;
            if last >= lo[d] && last <= hi[d] {
                x[d] = i64::try_from(last).map_err(|_| Error::Overflow)?;
                out.push(PayoffVector(x.clone()));
            }
            return Ok(());
        }
        let from = lo[d].max(total - assigned - max_rest[d + 1]);
        let to = hi[d].min(total - assigned - min_rest[d + 1]);
        let mut val = from;
        while val <= to {
            meter.tick()?;
            x[d] = i64::try_from(val).map_err(|_| Error::Overflow)?;
            rec(d + 1, assigned + val, ctx, x, out, meter)?;
            val += 1;
        }
        Ok(())
    }

    rec(
        0,
        0,
        (&lo, &hi, &min_rest, &max_rest, total),
        &mut x,
        &mut out,
        &mut meter,
    )?;
    Ok(out)
}

/// Converse reduced game property over a bounded candidate universe.
///
/// For every efficient `x` in the core bounding box widened by `margin`, if `x_S` lies in
/// the solution of `(S, v^x_S)` for every two-player `S`, then `x` must lie in the
/// solution of `(N, v)`. Games with `n ≤ 2` have no proper two-player coalition and are
/// reported as skipped.
pub fn verify_crgp(
    g: &Game,
    solution: Solution,
    margin: i64,
    budget: Budget,
) -> Result<PropertyReport> {
    let property = match solution {
        Solution::Core => PropertyKind::CoreCrgp,
        Solution::Lss => PropertyKind::LssCrgp,
        Solution::Egalitarian => {
            return Err(Error::InvalidArgument(
                "the converse property is checked for core and lss only".into(),
            ))
        }
    };
    if solution == Solution::Lss {
        require_supermodular(g)?;
    }
    let mut report = PropertyReport::new(property);
    report.margin = Some(margin);
    if g.n() <= 2 {
        report.note = Some(format!(
            "skipped: with {} players there is no proper two-player coalition",
            g.n()
        ));
        return Ok(report);
    }
    let pairs: Vec<Coalition> = proper_coalitions(g).filter(|s| s.len() == 2).collect();
    let target = solution.evaluate(g, budget)?;
    for x in efficient_box(g, margin, budget)? {
        report.checked += 1;
        let mut hypothesis = true;
        for &s in &pairs {
            let reduced = reduced_game(g, s, &x)?;
            if !solution.contains(&reduced.game, &x.restrict(s), budget)? {
                hypothesis = false;
                break;
            }
        }
        if hypothesis && !target.contains(&x) {
            return Ok(report.refute(Counterexample {
                x,
                coalition: g.grand(),
                violation: Violation::Crgp { pairs },
            }));
        }
    }
    Ok(report)
}

/// Every `y ∈ L(N) ∖ E(L(N))` is Lorenz-dominated by some member of `E(L(N))`.
pub fn verify_external_lorenz_stability(g: &Game, budget: Budget) -> Result<PropertyReport> {
    let table = lorenz_core_table(g, g.grand(), budget)?;
    let root = table.get(g.grand()).expect("root entry");
    let mut report = PropertyReport::new(PropertyKind::ExternalStability);
    for y in &root.core.difference(&root.egalitarian) {
        report.checked += 1;
        let mut dominated = false;
        for e in &root.egalitarian {
            if lorenz_dominates(e, y)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            return Ok(report.refute(Counterexample {
                x: y.clone(),
                coalition: g.grand(),
                violation: Violation::NotDominated {
                    egalitarian: root.egalitarian.clone(),
                },
            }));
        }
    }
    Ok(report)
}
