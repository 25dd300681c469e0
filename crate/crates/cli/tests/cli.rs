use std::path::PathBuf;
use std::process::Command;

use coopgame_cli::report::{ConstraintData, Payload, Report, ViolationData};
use coopgame_cli::{run, Outcome};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> Outcome {
    let mut argv = vec!["coopgame"];
    argv.extend_from_slice(args);
    run(argv)
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut argv = args.to_vec();
    argv.extend_from_slice(&["--format", "json"]);
    let out = cli(&argv);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    let report: Report = serde_json::from_str(&out.stdout).expect("report parses");
    (report, out.code)
}

#[test]
fn json_reports_round_trip() {
    let ex46 = fixture("ex46.json");
    let ex29 = fixture("ex29.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["check-convex", "--game", &ex46],
        vec!["core", "--game", &ex29],
        vec!["core-member", "--game", &ex46, "--payoff", "64,65,81"],
        vec!["lss", "--game", &ex46],
        vec!["decmin", "--game", &ex46],
        vec!["canonical", "--game", &ex46],
        vec!["egalitarian", "--game", &ex46],
        vec!["lorenz-core", "--all", "--game", &ex29],
        vec!["dutta-ray", "--game", &ex29],
        vec![
            "reduce",
            "--game",
            &ex46,
            "--coalition",
            "2,3",
            "--payoff",
            "64,65,81",
        ],
        vec!["verify", "--game", &ex46, "--property", "ega-rgp"],
        vec![
            "random", "--seed", "9", "--n", "4", "--bound", "6", "--signed",
        ],
    ];
    for args in runs {
        let mut argv = args.clone();
        argv.extend_from_slice(&["--format", "json"]);
        let first = cli(&argv);
        let again = cli(&argv);
        assert_eq!(first, again, "output differs between runs of {args:?}");
        let report: Report = serde_json::from_str(&first.stdout).unwrap();
        let back = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(back, first.stdout, "round trip of {args:?}");
    }
}

#[test]
fn core_member_reports_the_blocking_coalition() {
    let ex46 = fixture("ex46.json");
    let (r, code) = json(&["core-member", "--game", &ex46, "--payoff", "65,64,81"]);
    assert_eq!(code, 1);
    match r.result {
        Payload::Membership {
            member, violated, ..
        } => {
            assert!(!member);
            assert_eq!(
                violated,
                Some(ConstraintData::Blocking {
                    coalition: "2,3".into(),
                    paid: 145,
                    worth: 150
                })
            );
        }
        other => panic!("{other:?}"),
    }
    let (_, code) = json(&["core-member", "--game", &ex46, "--payoff", "60,70,80"]);
    assert_eq!(code, 0);
    let (r, code) = json(&["core-member", "--game", &ex46, "--payoff", "60,70,81"]);
    assert_eq!(code, 1);
    assert!(matches!(
        r.result,
        Payload::Membership {
            violated: Some(ConstraintData::Efficiency {
                paid: 211,
                worth: 210
            }),
            ..
        }
    ));
}

#[test]
fn dutta_ray_prints_rationals() {
    let dir = std::env::temp_dir().join(format!("coopgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sym.json");
    std::fs::write(&path, r#"{"n": 2, "v": {"1": 0, "2": 0, "1,2": 5}}"#).unwrap();
    let (r, code) = json(&["dutta-ray", "--game", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    match r.result {
        Payload::DuttaRay { solution, steps } => {
            assert_eq!(solution, vec!["5/2", "5/2"]);
            assert_eq!(steps.len(), 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn reduce_writes_a_loadable_game() {
    let dir = std::env::temp_dir().join(format!("coopgame-reduce-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("reduced.json");
    let ex46 = fixture("ex46.json");
    let o = cli(&[
        "reduce",
        "--game",
        &ex46,
        "--coalition",
        "2,3",
        "--payoff",
        "60,70,80",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (r, _) = json(&["lss", "--game", out.to_str().unwrap()]);
    match r.result {
        Payload::VectorSet { vectors, .. } => assert_eq!(vectors, vec![vec![70, 80]]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn exit_codes() {
    let ex46 = fixture("ex46.json");
    let ex41 = fixture("ex41-3p.json");
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["core", "--game", &ex46, "--bogus"]).code, 2);
    assert_eq!(cli(&["core"]).code, 2);
    assert_eq!(cli(&["core", "--game", "/nonexistent/game.json"]).code, 2);
    assert_eq!(
        cli(&["core-member", "--game", &ex46, "--payoff", "1,2"]).code,
        2
    );
    assert_eq!(
        cli(&[
            "reduce",
            "--game",
            &ex46,
            "--coalition",
            "1,2,3",
            "--payoff",
            "60,70,80"
        ])
        .code,
        2
    );
    assert_eq!(
        cli(&["verify", "--game", &ex46, "--property", "nope"]).code,
        2
    );
    assert_eq!(cli(&["core", "--game", &ex46, "--budget", "5"]).code, 3);
    assert_eq!(cli(&["check-convex", "--game", &ex41]).code, 1);
    assert_eq!(cli(&["check-convex", "--game", &ex46]).code, 0);
    assert_eq!(cli(&["dutta-ray", "--game", &ex41]).code, 2);
    assert_eq!(
        cli(&["verify", "--game", &ex46, "--property", "lss-rgp"]).code,
        0
    );
    assert_eq!(
        cli(&["verify", "--game", &ex46, "--property", "core-rgp"]).code,
        0
    );
    assert_eq!(
        cli(&[
            "verify",
            "--game",
            &ex46,
            "--property",
            "external-stability"
        ])
        .code,
        0
    );
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("lorenz-core"));
}

#[test]
fn flagged_three_player_fixture() {
    let ex41 = fixture("ex41-3p.json");
    let (r, code) = json(&["egalitarian", "--game", &ex41]);
    assert_eq!(code, 0);
    assert_eq!(r.game.map(|d| d.supermodular), Some(false));
    match r.result {
        Payload::VectorSet { vectors, .. } => assert_eq!(vectors, vec![vec![1, 0, 0]]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn crgp_on_two_players_is_skipped() {
    let ex = fixture("ex41-2p.json");
    let (r, code) = json(&["verify", "--game", &ex, "--property", "core-crgp"]);
    assert_eq!(code, 0);
    match r.result {
        Payload::Property(p) => {
            assert!(p.holds);
            assert!(p.note.is_some());
            assert_eq!(p.checked, 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn ega_rgp_report_is_flagged_as_expected() {
    let ex46 = fixture("ex46.json");
    let (r, code) = json(&["verify", "--game", &ex46, "--property", "ega-rgp"]);
    assert_eq!(code, 1);
    let Payload::Property(p) = r.result else {
        panic!()
    };
    assert!(p.expected_to_fail);
    let c = p.counterexample.unwrap();
    assert_eq!(c.x, vec![64, 65, 81]);
    assert_eq!(c.coalition, "2,3");
    match c.violation {
        ViolationData::Rgp {
            reduced,
            restricted,
            reduced_solution,
        } => {
            assert_eq!(reduced.players, vec![2, 3]);
            let worths: Vec<i64> = reduced.game.v.iter().map(|w| w.worth).collect();
            assert_eq!(worths, vec![60, 80, 146]);
            assert_eq!(restricted, vec![65, 81]);
            assert_eq!(reduced_solution, vec![vec![66, 80]]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn budget_from_environment() {
    let ex46 = fixture("ex46.json");
    let status = Command::new(env!("CARGO_BIN_EXE_coopgame"))
        .args(["core", "--game", &ex46])
        .env("COOPGAME_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    let status = Command::new(env!("CARGO_BIN_EXE_coopgame"))
        .args(["core", "--game", &ex46, "--budget", "100000"])
        .env("COOPGAME_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(env!("CARGO_BIN_EXE_coopgame"))
        .args(["core", "--game", &ex46])
        .env("COOPGAME_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn parse_errors_are_input_errors() {
    let dir = std::env::temp_dir().join(format!("coopgame-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (
            r#"{"n": 2, "v": {"1": 0, "2": 0}}"#,
            "missing coalition \"1,2\"",
        ),
        (r#"{"n": 2, "v": {"1": 0, "2": 0, "2,1": 1}}"#, "ascending"),
        (
            r#"{"n": 2, "v": {"1": 0, "2": 0, "1,2": 1, "1": 3}}"#,
            "duplicate coalition",
        ),
        (r#"{"n": 2, "v": {"1": 0, "2": 0, "1,2": "x"}}"#, "line 1"),
        (r#"{"n": 2, "v": {"1": 0, "2": 0, "1,3": 1}}"#, "player 3"),
        (
            r#"{"n": 2, "v": {"1": 0, "2": 0, "1,2": 1, "∅": 0}}"#,
            "empty coalition",
        ),
        ("{\"n\": 2,\n\"v\": {\"1\": 0 \"2\": 0}}", "line 2"),
    ];
    for (k, (text, needle)) in cases.iter().enumerate() {
        let path = dir.join(format!("bad{k}.json"));
        std::fs::write(&path, text).unwrap();
        let out = cli(&["core", "--game", path.to_str().unwrap()]);
        assert_eq!(out.code, 2, "{text}");
        assert!(out.stderr.contains(needle), "{text}: {}", out.stderr);
    }
}
