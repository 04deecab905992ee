//! Closed-form classifications and explicit strategies for particular
//! families of games.

mod bow;
mod clique;
mod cycle;
pub mod matching;
mod named;

pub use bow::{bow_strategy, BowSpec};
pub use clique::{
    almost_clique_classify, almost_clique_game, arithmetic_clique_strategy, classical_strategy,
    clique_classify, clique_game, hall_clique_strategy, lemma_6623_strategy, reciprocal_sum,
    sage_names, sylvester_max_hatness,
};
pub use cycle::{cycle_classify, p2, path_2442, triangle_244};
pub use named::{named_game, NAMED_GAMES};
