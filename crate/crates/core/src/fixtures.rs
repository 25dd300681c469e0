//! Small reference games used throughout the tests and shipped as CLI fixtures.

use crate::game::Game;

fn three_player(v1: i64, v2: i64, v3: i64, v12: i64, v13: i64, v23: i64, v123: i64) -> Game {
    Game::new(3, vec![0, v1, v2, v12, v3, v13, v23, v123]).expect("valid three-player table")
}

/// Convex three-player game with `v(N) = 210` and egalitarian set
/// `{(60,70,80), (64,65,81), (65,64,81)}`.
pub fn convex_210() -> Game {
    three_player(40, 60, 80, 110, 120, 150, 210)
}

/// The same game scaled down by 10; its continuous egalitarian solution is `(6,7,8)`.
pub fn convex_21() -> Game {
    three_player(4, 6, 8, 11, 12, 15, 21)
}

/// `v({1}) = v({2}) = 0`, `v({1,2}) = total`.
pub fn two_player(total: i64) -> Game {
    Game::new(2, vec![0, 0, 0, total]).expect("valid two-player table")
}

/// Three players, zero singletons, `v({1,2}) = v({1,3}) = v(N) = 1`, `v({2,3}) = 0`.
pub fn veto_three_player() -> Game {
    three_player(0, 0, 0, 1, 1, 0, 1)
}

/// `v(S) = c·|S|`.
pub fn symmetric(n: usize, c: i64) -> Game {
    Game::from_fn(n, |s| c * s.len() as i64).expect("valid symmetric game")
}
