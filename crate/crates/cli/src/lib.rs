//! Command-line front end for the `coopgame` library.
//!
//! [`run`] does all the work and returns the captured output and exit code, so the
//! binary is a thin wrapper and tests can drive the CLI in-process.

pub mod gamefile;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand, ValueEnum};
use coopgame::{
    canonical_decomposition, core_enumerate, core_violation, dec_min_by_tightening,
    dutta_ray_decomposition, egalitarian_set, is_supermodular, lorenz_core_table, lss,
    reduced_game, verify_crgp, verify_external_lorenz_stability, verify_reduced_convexity,
    verify_rgp, Budget, Coalition, Game, GameGenerator, PayoffVector, PropertyKind, Solution,
    Synergy, DEFAULT_BUDGET, DEFAULT_CRGP_MARGIN,
};
use thiserror::Error;

use gamefile::{parse_coalition_key, parse_game, write_game, GameFileError};
use report::{
    canonical_payload, dutta_ray_payload, vectors, GameData, GameDigest, LorenzRow, Payload,
    PropertyData, ReducedData, Report,
};

pub const BUDGET_ENV: &str = "COOPGAME_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "coopgame",
    version,
    about = "Cores, Lorenz stable sets, egalitarian solutions and consistency checks for integer cooperative games"
)]
struct Cli {
    /// Game file (JSON)
    #[arg(long, global = true, value_name = "PATH")]
    game: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Maximum number of search nodes per enumeration [env: COOPGAME_BUDGET]
    #[arg(long, global = true, value_name = "POINTS")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check supermodularity of the game
    CheckConvex,
    /// Enumerate the integer core
    Core,
    /// Test a payoff vector for core membership
    CoreMember {
        #[arg(long, allow_hyphen_values = true, value_name = "X1,X2,...")]
        payoff: String,
    },
    /// Lorenz stable set: the dec-min elements of the integer core
    Lss,
    /// One dec-min core element, reached by 1-tightening steps
    Decmin,
    /// Canonical chain, partition and essential values
    Canonical,
    /// Egalitarian solutions E(L(N))
    Egalitarian,
    /// Lorenz core of a coalition, or of every coalition
    LorenzCore {
        #[arg(long, value_name = "IDS", conflicts_with = "all")]
        coalition: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Continuous egalitarian solution in exact rationals
    DuttaRay,
    /// Davis–Maschler reduced game at a payoff vector
    Reduce {
        #[arg(long, value_name = "IDS")]
        coalition: String,
        #[arg(long, allow_hyphen_values = true, value_name = "X1,X2,...")]
        payoff: String,
        /// Also write the reduced game as a game file
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Check a consistency property exhaustively
    Verify {
        #[arg(long, value_parser = PossibleValuesParser::new([
            "core-rgp", "lss-rgp", "ega-rgp", "core-crgp", "lss-crgp",
            "external-stability", "reduced-convexity",
        ]))]
        property: String,
        /// Widening of the candidate box for converse checks
        #[arg(long, default_value_t = DEFAULT_CRGP_MARGIN)]
        margin: i64,
    },
    /// Generate a seeded random game
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: i64,
        /// Allow negative synergies (the game need not be supermodular)
        #[arg(long)]
        signed: bool,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Look for random supermodular games whose egalitarian set misses the core
    EgaCoreSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: GameFileError,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Library(#[from] coopgame::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Library(coopgame::Error::BudgetExceeded(_)) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Library(coopgame::Error::NotSupermodular { s, t }) => format!(
                "game is not supermodular: v(S) + v(T) > v(S∪T) + v(S∩T) for S = {}, T = {}",
                Coalition(*s),
                Coalition(*t)
            ),
            other => other.to_string(),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn parse_payoff(text: &str, n: usize) -> Result<PayoffVector, String> {
    let entries = text
        .split(',')
        .map(|p| {
            p.trim().parse::<i64>().map_err(|_| {
                format!("malformed payoff \"{text}\": expected comma-separated integers")
            })
        })
        .collect::<Result<Vec<i64>, String>>()?;
    if entries.len() != n {
        return Err(format!(
            "payoff \"{text}\" has {} entries, the game has {n} players",
            entries.len()
        ));
    }
    Ok(PayoffVector(entries))
}

pub fn parse_coalition(text: &str, n: usize) -> Result<Coalition, String> {
    let s = parse_coalition_key(text)?;
    if s.0 as u64 >= 1u64 << n {
        return Err(format!(
            "coalition \"{text}\" names a player outside 1..={n}"
        ));
    }
    Ok(s)
}

fn budget_from(flag: Option<u64>) -> Result<Budget, CliError> {
    if let Some(b) = flag {
        return Ok(Budget(b));
    }
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text.trim().parse().map(Budget).map_err(|_| {
            CliError::Usage(format!("{BUDGET_ENV}={text} is not a nonnegative integer"))
        }),
        Err(_) => Ok(Budget(DEFAULT_BUDGET)),
    }
}

fn load_game(path: Option<&Path>) -> Result<Game, CliError> {
    let path = path.ok_or_else(|| CliError::Usage("this command needs --game <PATH>".into()))?;
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_game(&text).map_err(|source| CliError::File {
        path: shown,
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn digest(g: &Game) -> GameDigest {
    GameDigest {
        n: g.n(),
        supermodular: is_supermodular(g).holds,
    }
}

fn property_report(
    g: &Game,
    name: &str,
    margin: i64,
    budget: Budget,
) -> Result<PropertyData, CliError> {
    let kind = PropertyKind::parse(name)
        .ok_or_else(|| CliError::Usage(format!("unknown property \"{name}\"")))?;
    if margin < 0 {
        return Err(CliError::Usage(format!(
            "margin must be nonnegative, got {margin}"
        )));
    }
    let r = match kind {
        PropertyKind::CoreRgp => verify_rgp(g, Solution::Core, budget)?,
        PropertyKind::LssRgp => verify_rgp(g, Solution::Lss, budget)?,
        PropertyKind::EgaRgp => verify_rgp(g, Solution::Egalitarian, budget)?,
        PropertyKind::CoreCrgp => verify_crgp(g, Solution::Core, margin, budget)?,
        PropertyKind::LssCrgp => verify_crgp(g, Solution::Lss, margin, budget)?,
        PropertyKind::ExternalStability => verify_external_lorenz_stability(g, budget)?,
        PropertyKind::ReducedConvexity => verify_reduced_convexity(g, budget)?,
    };
    Ok(PropertyData::from(&r))
}

/// Runs one command; returns the report and whether a negative verdict was reached.
fn execute(cli: &Cli) -> Result<(Option<GameDigest>, Payload, bool), CliError> {
    let budget = budget_from(cli.budget)?;
    let game = || load_game(cli.game.as_deref());
    let set = |name: &str, s: &coopgame::VectorSet| Payload::VectorSet {
        name: name.to_string(),
        vectors: vectors(s),
    };
    Ok(match &cli.command {
        Command::CheckConvex => {
            let g = game()?;
            let r = is_supermodular(&g);
            let payload = Payload::Convexity {
                supermodular: r.holds,
                witness: r.witness.map(|(s, t)| [s.key(), t.key()]),
            };
            (Some(digest(&g)), payload, !r.holds)
        }
        Command::Core => {
            let g = game()?;
            let c = core_enumerate(&g, g.grand(), budget)?;
            (Some(digest(&g)), set("core", &c), false)
        }
        Command::CoreMember { payoff } => {
            let g = game()?;
            let x = parse_payoff(payoff, g.n()).map_err(CliError::Usage)?;
            let violated = core_violation(&g, g.grand(), &x)?;
            let member = violated.is_none();
            let payload = Payload::Membership {
                payoff: x.0,
                member,
                violated: violated.as_ref().map(TryInto::try_into).transpose()?,
            };
            (Some(digest(&g)), payload, !member)
        }
        Command::Lss => {
            let g = game()?;
            let s = lss(&g, budget)?;
            (Some(digest(&g)), set("lorenz stable set", &s), false)
        }
        Command::Decmin => {
            let g = game()?;
            let x = dec_min_by_tightening(&g)?;
            let payload = Payload::Vector {
                name: "dec-min core element".into(),
                vector: x.0,
            };
            (Some(digest(&g)), payload, false)
        }
        Command::Canonical => {
            let g = game()?;
            let d = canonical_decomposition(&g)?;
            (Some(digest(&g)), canonical_payload(&d), false)
        }
        Command::Egalitarian => {
            let g = game()?;
            let e = egalitarian_set(&g, budget)?;
            (Some(digest(&g)), set("egalitarian solutions", &e), false)
        }
        Command::LorenzCore { coalition, all } => {
            let g = game()?;
            let root = match coalition {
                Some(text) => parse_coalition(text, g.n()).map_err(CliError::Usage)?,
                None => g.grand(),
            };
            let table = lorenz_core_table(&g, root, budget)?;
            let rows = if *all {
                let mut entries: Vec<_> = table.iter().collect();
                entries.sort_by_key(|e| (e.coalition.len(), e.coalition.0));
                entries.into_iter().map(LorenzRow::from).collect()
            } else {
                vec![LorenzRow::from(table.get(root).expect("root entry"))]
            };
            (Some(digest(&g)), Payload::LorenzCore { rows }, false)
        }
        Command::DuttaRay => {
            let g = game()?;
            let run = dutta_ray_decomposition(&g)?;
            (Some(digest(&g)), dutta_ray_payload(&run), false)
        }
        Command::Reduce {
            coalition,
            payoff,
            output,
        } => {
            let g = game()?;
            let s = parse_coalition(coalition, g.n()).map_err(CliError::Usage)?;
            let x = parse_payoff(payoff, g.n()).map_err(CliError::Usage)?;
            let r = reduced_game(&g, s, &x)?;
            if let Some(path) = output {
                write_file(path, &write_game(&r.game))?;
            }
            let payload = Payload::Reduced {
                restricted: x.restrict(s).0,
                payoff: x.0,
                reduced: ReducedData::from_reduced(&r),
            };
            (Some(digest(&g)), payload, false)
        }
        Command::Verify { property, margin } => {
            let g = game()?;
            let p = property_report(&g, property, *margin, budget)?;
            let refuted = !p.holds;
            (Some(digest(&g)), Payload::Property(p), refuted)
        }
        Command::Random {
            seed,
            n,
            bound,
            signed,
            output,
        } => {
            let synergy = if *signed {
                Synergy::Signed
            } else {
                Synergy::Nonnegative
            };
            let g = GameGenerator {
                seed: *seed,
                n: *n,
                weight_bound: *bound,
                synergy,
            }
            .generate()?;
            if let Some(path) = output {
                write_file(path, &write_game(&g))?;
            }
            let payload = Payload::Game {
                seed: *seed,
                synergy: if *signed { "signed" } else { "nonnegative" }.into(),
                game: GameData::from_game(&g),
            };
            (Some(digest(&g)), payload, false)
        }
        Command::EgaCoreSearch {
            n,
            bound,
            count,
            start,
        } => {
            let seeds: Vec<u64> = (*start..start.saturating_add(*count)).collect();
            let mut missing = Vec::new();
            for &seed in &seeds {
                let g = coopgame::random_supermodular_game(seed, *n, *bound)?;
                let e = egalitarian_set(&g, budget)?;
                let mut hit = false;
                for x in &e {
                    if core_violation(&g, g.grand(), x)?.is_none() {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    missing.push(seed);
                }
            }
            let payload = Payload::EgalitarianSearch {
                n: *n,
                bound: *bound,
                seeds,
                without_core_member: missing,
            };
            (None, payload, false)
        }
    })
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_INPUT,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    let command = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli) {
        Ok((game, result, negative)) => {
            let report = Report {
                command,
                game,
                result,
            };
            let stdout = match cli.format {
                Format::Table => report.render_table(),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: if negative { EXIT_REFUTED } else { EXIT_OK },
            }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
            code: e.code(),
        },
    }
}
