// Values frozen from an independent brute-force enumeration.

use coopgame::fixtures::{convex_21, convex_210, two_player, veto_three_player};
use coopgame::{
    core_enumerate, dutta_ray_decomposition, egalitarian_set, format_rational, lorenz_core,
    lorenz_core_table, lorenz_dominates, lss, reduced_game, verify_rgp, Budget, Coalition,
    PayoffVector, Solution, VectorSet, Violation,
};

fn set(vs: &[&[i64]]) -> VectorSet {
    vs.iter().map(|v| PayoffVector(v.to_vec())).collect()
}

#[test]
fn lorenz_core_rows_of_the_three_player_example() {
    let g = convex_210();
    let table = lorenz_core_table(&g, g.grand(), Budget::default()).unwrap();
    let expected: [(u32, &[&[i64]], usize); 7] = [
        (0b001, &[&[40]], 1),
        (0b010, &[&[60]], 1),
        (0b100, &[&[80]], 1),
        (0b011, &[&[50, 60]], 11),
        (0b101, &[&[40, 80]], 1),
        (0b110, &[&[70, 80]], 11),
        (0b111, &[&[60, 70, 80], &[64, 65, 81], &[65, 64, 81]], 476),
    ];
    for (mask, egal, size) in expected {
        let entry = table.get(Coalition(mask)).unwrap();
        assert_eq!(entry.egalitarian, set(egal), "{}", Coalition(mask));
        assert_eq!(entry.core.len(), size, "{}", Coalition(mask));
    }
}

#[test]
fn egalitarian_points_outside_the_core() {
    let g = convex_210();
    let b = Budget::default();
    let core = core_enumerate(&g, g.grand(), b).unwrap();
    assert_eq!(core.len(), 386);
    assert_eq!(lss(&g, b).unwrap(), set(&[&[60, 70, 80]]));
    let e = egalitarian_set(&g, b).unwrap();
    assert_eq!(e.intersection(&core), set(&[&[60, 70, 80]]));

    let l = lorenz_core(&g, g.grand(), b).unwrap();
    let odd = PayoffVector(vec![64, 64, 82]);
    assert!(l.contains(&odd) && !e.contains(&odd));
    assert!(!lorenz_dominates(&PayoffVector(vec![60, 70, 80]), &odd).unwrap());
    assert!(lorenz_dominates(&PayoffVector(vec![64, 65, 81]), &odd).unwrap());
    // a core point that an outside egalitarian point fails to dominate
    let y = PayoffVector(vec![59, 71, 80]);
    assert!(core.contains(&y));
    assert!(!lorenz_dominates(&PayoffVector(vec![64, 65, 81]), &y).unwrap());
}

#[test]
fn reduced_game_at_an_egalitarian_point() {
    let g = convex_210();
    let r = reduced_game(&g, Coalition(0b110), &PayoffVector(vec![64, 65, 81])).unwrap();
    assert_eq!(r.game.worths(), &[0, 60, 80, 146]);
    assert_eq!(r.players, vec![1, 2]);
    let table = lorenz_core_table(&r.game, r.game.grand(), Budget::default()).unwrap();
    assert_eq!(
        table.get(Coalition(0b01)).unwrap().egalitarian,
        set(&[&[60]])
    );
    assert_eq!(
        table.get(Coalition(0b10)).unwrap().egalitarian,
        set(&[&[80]])
    );
    assert_eq!(
        table.get(Coalition(0b11)).unwrap().egalitarian,
        set(&[&[66, 80]])
    );

    let report = verify_rgp(&g, Solution::Egalitarian, Budget::default()).unwrap();
    let c = report.counterexample.unwrap();
    assert_eq!(
        (c.x.0.as_slice(), c.coalition),
        (&[64, 65, 81][..], Coalition(0b110))
    );
    assert!(matches!(c.violation, Violation::Rgp { .. }));
}

#[test]
fn non_unique_egalitarian_solutions() {
    let g = two_player(1);
    assert_eq!(
        egalitarian_set(&g, Budget::default()).unwrap(),
        set(&[&[0, 1], &[1, 0]])
    );
    // the three-player game as printed has a single egalitarian solution
    let g = veto_three_player();
    let l = lorenz_core(&g, g.grand(), Budget::default()).unwrap();
    assert_eq!(l, set(&[&[1, 0, 0]]));
    assert_eq!(egalitarian_set(&g, Budget::default()).unwrap(), l);
}

#[test]
fn continuous_solutions() {
    let show = |g| {
        let run = dutta_ray_decomposition(&g).unwrap();
        run.solution
            .0
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
    };
    assert_eq!(show(convex_21()), ["6", "7", "8"]);
    assert_eq!(show(convex_210()), ["60", "70", "80"]);
    assert_eq!(show(two_player(5)), ["5/2", "5/2"]);
}
