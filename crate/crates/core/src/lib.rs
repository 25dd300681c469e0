//! Integer cooperative games: cores as M-convex sets, decreasingly-minimal core elements
//! (the Lorenz stable set), canonical partitions, discrete Lorenz cores and egalitarian
//! solutions, the continuous egalitarian solution, and checks of the reduced game
//! property and its converse.
//!
//! Players are 0-indexed throughout the library. Every algorithm here is exponential in
//! the number of players and is meant for desk-scale games.

pub mod budget;
pub mod coalition;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod lorenz;
pub mod mconvex;
pub mod orders;
pub mod payoff;
pub mod verify;

pub use budget::{Budget, DEFAULT_BUDGET};
pub use coalition::Coalition;
pub use error::{Error, Result};
pub use game::{
    is_feasible_payoff, is_imputation, is_supermodular, marginal_vector, random_game,
    random_supermodular_game, reduced_game, Game, GameGenerator, ReducedGame,
    SupermodularityReport, Synergy,
};
pub use lorenz::{
    dutta_ray_decomposition, egalitarian_set, lorenz_core, lorenz_core_table, DecompositionRun,
    DecompositionStep, LorenzCoreEntry, LorenzCoreTable,
};
pub use mconvex::{
    canonical_decomposition, canonical_decomposition_by_threshold, core_enumerate, core_membership,
    core_violation, dec_min_by_tightening, dec_min_set_structural, find_tightening, lss,
    lss_by_filter, CanonicalDecomposition, CoreViolation, Tightening,
};
pub use orders::{
    compare_dec, compare_inc, is_dec_min, is_inc_max, is_least_majorized, lorenz_dominates,
    lorenz_dominates_inc, lorenz_filter, majorization_vector, majorized_by, sort_dec, sort_inc,
    value_equivalent, DecComparison, MajorizationVector,
};
pub use payoff::{format_rational, PayoffVector, RationalPayoffVector, VectorSet};
pub use verify::{
    verify_crgp, verify_external_lorenz_stability, verify_reduced_convexity, verify_rgp,
    Counterexample, PropertyKind, PropertyReport, Solution, Violation, DEFAULT_CRGP_MARGIN,
};
