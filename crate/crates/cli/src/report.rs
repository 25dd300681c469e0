//! Report payloads and their two renderings.
//!
//! Players and coalitions are 1-based here. Rationals are strings `"p/q"`, or plain
//! integers when the denominator is 1.

use std::fmt::Write as _;

use coopgame::lorenz::LorenzCoreEntry;
use coopgame::{
    format_rational, CanonicalDecomposition, Coalition, CoreViolation, Counterexample,
    DecompositionRun, Game, PayoffVector, PropertyReport, ReducedGame, VectorSet, Violation,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub game: Option<GameDigest>,
    pub result: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameDigest {
    pub n: usize,
    pub supermodular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Worth {
    pub coalition: String,
    pub worth: i64,
}

/// A game as a list of worths in ascending mask order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameData {
    pub n: usize,
    pub v: Vec<Worth>,
}

impl GameData {
    pub fn from_game(g: &Game) -> Self {
        GameData {
            n: g.n(),
            v: (1..1u32 << g.n())
                .map(|m| Worth {
                    coalition: Coalition(m).key(),
                    worth: g.worth(Coalition(m)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedData {
    pub coalition: String,
    /// `players[k]` is the original id of new player `k + 1`.
    pub players: Vec<usize>,
    pub game: GameData,
}

impl ReducedData {
    pub fn from_reduced(r: &ReducedGame) -> Self {
        ReducedData {
            coalition: r.coalition.key(),
            players: r.players.iter().map(|&p| p + 1).collect(),
            game: GameData::from_game(&r.game),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstraintData {
    /// `x(N) ≠ v(N)`.
    Efficiency { paid: i64, worth: i64 },
    /// `x(T) < v(T)`.
    Blocking {
        coalition: String,
        paid: i64,
        worth: i64,
    },
}

impl TryFrom<&CoreViolation> for ConstraintData {
    type Error = coopgame::Error;

    fn try_from(v: &CoreViolation) -> Result<Self, coopgame::Error> {
        let narrow = |p: i128| i64::try_from(p).map_err(|_| coopgame::Error::Overflow);
        Ok(match *v {
            CoreViolation::Efficiency { paid, worth } => ConstraintData::Efficiency {
                paid: narrow(paid)?,
                worth,
            },
            CoreViolation::Blocking {
                coalition,
                paid,
                worth,
            } => ConstraintData::Blocking {
                coalition: coalition.key(),
                paid: narrow(paid)?,
                worth,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepData {
    pub coalition: String,
    pub average: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LorenzRow {
    pub coalition: String,
    pub lorenz_core: Vec<Vec<i64>>,
    pub egalitarian: Vec<Vec<i64>>,
}

impl From<&LorenzCoreEntry> for LorenzRow {
    fn from(e: &LorenzCoreEntry) -> Self {
        LorenzRow {
            coalition: e.coalition.key(),
            lorenz_core: vectors(&e.core),
            egalitarian: vectors(&e.egalitarian),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ViolationData {
    Rgp {
        reduced: ReducedData,
        restricted: Vec<i64>,
        reduced_solution: Vec<Vec<i64>>,
    },
    Crgp {
        pairs: Vec<String>,
    },
    NotDominated {
        egalitarian: Vec<Vec<i64>>,
    },
    ReducedNotSupermodular {
        reduced: ReducedData,
        witness: [String; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleData {
    pub x: Vec<i64>,
    pub coalition: String,
    pub violation: ViolationData,
}

impl From<&Counterexample> for CounterexampleData {
    fn from(c: &Counterexample) -> Self {
        let violation = match &c.violation {
            Violation::Rgp {
                reduced,
                restricted,
                reduced_solution,
            } => ViolationData::Rgp {
                reduced: ReducedData::from_reduced(reduced),
                restricted: restricted.0.clone(),
                reduced_solution: vectors(reduced_solution),
            },
            Violation::Crgp { pairs } => ViolationData::Crgp {
                pairs: pairs.iter().map(|s| s.key()).collect(),
            },
            Violation::NotDominated { egalitarian } => ViolationData::NotDominated {
                egalitarian: vectors(egalitarian),
            },
            Violation::ReducedNotSupermodular { reduced, witness } => {
                // witness coalitions are local to the reduced game; report original ids
                let lift = |s: Coalition| coopgame::game::lift(s, &reduced.players).key();
                ViolationData::ReducedNotSupermodular {
                    reduced: ReducedData::from_reduced(reduced),
                    witness: [lift(witness.0), lift(witness.1)],
                }
            }
        };
        CounterexampleData {
            x: c.x.0.clone(),
            coalition: c.coalition.key(),
            violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyData {
    pub property: String,
    pub holds: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub margin: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    /// Set for properties that are known to fail in general.
    pub expected_to_fail: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<CounterexampleData>,
}

impl From<&PropertyReport> for PropertyData {
    fn from(r: &PropertyReport) -> Self {
        PropertyData {
            property: r.property.name().to_string(),
            holds: r.holds,
            checked: r.checked,
            margin: r.margin,
            note: r.note.clone(),
            expected_to_fail: r.property == coopgame::PropertyKind::EgaRgp,
            counterexample: r.counterexample.as_ref().map(CounterexampleData::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Convexity {
        supermodular: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        witness: Option<[String; 2]>,
    },
    VectorSet {
        name: String,
        vectors: Vec<Vec<i64>>,
    },
    Membership {
        payoff: Vec<i64>,
        member: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        violated: Option<ConstraintData>,
    },
    Vector {
        name: String,
        vector: Vec<i64>,
    },
    Canonical {
        beta: Vec<i64>,
        chain: Vec<String>,
        partition: Vec<String>,
    },
    LorenzCore {
        rows: Vec<LorenzRow>,
    },
    DuttaRay {
        steps: Vec<StepData>,
        solution: Vec<String>,
    },
    Reduced {
        payoff: Vec<i64>,
        restricted: Vec<i64>,
        reduced: ReducedData,
    },
    Property(PropertyData),
    Game {
        seed: u64,
        synergy: String,
        game: GameData,
    },
    EgalitarianSearch {
        n: usize,
        bound: i64,
        seeds: Vec<u64>,
        /// Seeds whose egalitarian set has no core element.
        without_core_member: Vec<u64>,
    },
}

pub fn vectors(s: &VectorSet) -> Vec<Vec<i64>> {
    s.iter().map(|x| x.0.clone()).collect()
}

pub fn canonical_payload(d: &CanonicalDecomposition) -> Payload {
    Payload::Canonical {
        beta: d.beta.clone(),
        chain: d.chain.iter().map(|c| c.key()).collect(),
        partition: d.partition.iter().map(|c| c.key()).collect(),
    }
}

pub fn dutta_ray_payload(run: &DecompositionRun) -> Payload {
    Payload::DuttaRay {
        steps: run
            .steps
            .iter()
            .map(|s| StepData {
                coalition: s.coalition.key(),
                average: format_rational(&s.average),
            })
            .collect(),
        solution: run.solution.0.iter().map(format_rational).collect(),
    }
}

fn vec_str(v: &[i64]) -> String {
    PayoffVector(v.to_vec()).to_string()
}

fn set_lines(out: &mut String, indent: &str, vs: &[Vec<i64>]) {
    for v in vs {
        let _ = writeln!(out, "{indent}{}", vec_str(v));
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn game_lines(out: &mut String, indent: &str, g: &GameData) {
    let width = g.v.iter().map(|w| w.coalition.len()).max().unwrap_or(0) + 2;
    for w in &g.v {
        let _ = writeln!(
            out,
            "{indent}{:<width$} {}",
            format!("{{{}}}", w.coalition),
            w.worth
        );
    }
}

fn reduced_lines(out: &mut String, indent: &str, r: &ReducedData) {
    let map: Vec<String> = r
        .players
        .iter()
        .enumerate()
        .map(|(k, p)| format!("{}<-{}", k + 1, p))
        .collect();
    let _ = writeln!(
        out,
        "{indent}reduced game on {{{}}} (new<-old: {})",
        r.coalition,
        map.join(" ")
    );
    game_lines(out, &format!("{indent}  "), &r.game);
}

impl Report {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        if let Some(d) = &self.game {
            let _ = writeln!(
                out,
                "game: n = {}, supermodular: {}",
                d.n,
                yes_no(d.supermodular)
            );
        }
        match &self.result {
            Payload::Convexity {
                supermodular,
                witness,
            } => {
                let _ = writeln!(out, "supermodular: {}", yes_no(*supermodular));
                if let Some([s, t]) = witness {
                    let _ = writeln!(
                        out,
                        "violated: v(S) + v(T) > v(S∪T) + v(S∩T) for S = {{{s}}}, T = {{{t}}}"
                    );
                }
            }
            Payload::VectorSet { name, vectors } => {
                let _ = writeln!(out, "{name} ({} total):", vectors.len());
                set_lines(&mut out, "  ", vectors);
            }
            Payload::Membership {
                payoff,
                member,
                violated,
            } => {
                let _ = writeln!(out, "payoff: {}", vec_str(payoff));
                let _ = writeln!(out, "in core: {}", yes_no(*member));
                match violated {
                    Some(ConstraintData::Efficiency { paid, worth }) => {
                        let _ = writeln!(out, "violated: x(N) = {paid} != {worth} = v(N)");
                    }
                    Some(ConstraintData::Blocking {
                        coalition,
                        paid,
                        worth,
                    }) => {
                        let _ = writeln!(
                            out,
                            "violated: x({{{coalition}}}) = {paid} < {worth} = v({{{coalition}}})"
                        );
                    }
                    None => {}
                }
            }
            Payload::Vector { name, vector } => {
                let _ = writeln!(out, "{name}: {}", vec_str(vector));
            }
            Payload::Canonical {
                beta,
                chain,
                partition,
            } => {
                let _ = writeln!(out, "k        beta  S_k              C_k");
                for k in 0..beta.len() {
                    let block = format!("{{{}}}", partition[k]);
                    let _ = writeln!(
                        out,
                        "{:<4} {:>8}  {block:<16} {{{}}}",
                        k + 1,
                        beta[k],
                        chain[k]
                    );
                }
            }
            Payload::LorenzCore { rows } => {
                for row in rows {
                    let _ = writeln!(
                        out,
                        "S = {{{}}}: |L(S)| = {}, E(L(S)) = {}",
                        row.coalition,
                        row.lorenz_core.len(),
                        brace_set(&row.egalitarian)
                    );
                }
                if let [row] = rows.as_slice() {
                    let _ = writeln!(out, "L(S):");
                    set_lines(&mut out, "  ", &row.lorenz_core);
                }
            }
            Payload::DuttaRay { steps, solution } => {
                for (k, s) in steps.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "step {}: S = {{{}}}, average {}",
                        k + 1,
                        s.coalition,
                        s.average
                    );
                }
                let _ = writeln!(out, "solution: ({})", solution.join(","));
            }
            Payload::Reduced {
                payoff,
                restricted,
                reduced,
            } => {
                let _ = writeln!(out, "payoff: {}", vec_str(payoff));
                let _ = writeln!(out, "restricted payoff: {}", vec_str(restricted));
                reduced_lines(&mut out, "", reduced);
            }
            Payload::Property(p) => property_lines(&mut out, p),
            Payload::Game {
                seed,
                synergy,
                game,
            } => {
                let _ = writeln!(out, "seed {seed}, {synergy} synergies");
                game_lines(&mut out, "  ", game);
            }
            Payload::EgalitarianSearch {
                n,
                bound,
                seeds,
                without_core_member,
            } => {
                let _ = writeln!(
                    out,
                    "searched {} supermodular games (n = {n}, bound {bound})",
                    seeds.len()
                );
                if without_core_member.is_empty() {
                    let _ = writeln!(out, "every egalitarian set met the core");
                } else {
                    let list: Vec<String> =
                        without_core_member.iter().map(u64::to_string).collect();
                    let _ = writeln!(
                        out,
                        "no egalitarian element in the core for seeds: {}",
                        list.join(" ")
                    );
                }
            }
        }
        out
    }
}

fn brace_set(vs: &[Vec<i64>]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| vec_str(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn property_lines(out: &mut String, p: &PropertyData) {
    let _ = writeln!(out, "property: {}", p.property);
    let verdict = match (p.holds, p.expected_to_fail) {
        (true, _) => "holds",
        (false, true) => "refuted (a known negative result for this solution)",
        (false, false) => "refuted",
    };
    let _ = writeln!(out, "verdict: {verdict}");
    let _ = writeln!(out, "checked: {}", p.checked);
    if let Some(m) = p.margin {
        let _ = writeln!(out, "margin: {m}");
    }
    if let Some(note) = &p.note {
        let _ = writeln!(out, "note: {note}");
    }
    let Some(c) = &p.counterexample else {
        return;
    };
    let _ = writeln!(out, "counterexample:");
    let _ = writeln!(out, "  x = {}", vec_str(&c.x));
    let _ = writeln!(out, "  S = {{{}}}", c.coalition);
    match &c.violation {
        ViolationData::Rgp {
            reduced,
            restricted,
            reduced_solution,
        } => {
            reduced_lines(out, "  ", reduced);
            let _ = writeln!(
                out,
                "  x_S = {} is not in the reduced solution",
                vec_str(restricted)
            );
            let _ = writeln!(out, "  reduced solution: {}", brace_set(reduced_solution));
        }
        ViolationData::Crgp { pairs } => {
            let list: Vec<String> = pairs.iter().map(|s| format!("{{{s}}}")).collect();
            let _ = writeln!(
                out,
                "  x_S lies in the reduced solution for every pair S in {}, yet x is outside the solution",
                list.join(" ")
            );
        }
        ViolationData::NotDominated { egalitarian } => {
            let _ = writeln!(
                out,
                "  x is not Lorenz-dominated by any of {}",
                brace_set(egalitarian)
            );
        }
        ViolationData::ReducedNotSupermodular { reduced, witness } => {
            reduced_lines(out, "  ", reduced);
            let _ = writeln!(
                out,
                "  not supermodular at {{{}}}, {{{}}}",
                witness[0], witness[1]
            );
        }
    }
}
