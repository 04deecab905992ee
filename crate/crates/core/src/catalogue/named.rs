//! Named example games, each with a winning strategy.

use crate::constructors::{cone, ConeComponent, ConstructedGame};
use crate::error::{HatsError, Result};
use crate::game::Game;
use crate::rook::{win3_arrows, BoardBridge};

use super::{
    arithmetic_clique_strategy, bow_strategy, clique_game, cycle_classify, triangle_244, BowSpec,
};

pub const NAMED_GAMES: [&str; 5] = [
    "big-bow",
    "medium-bow",
    "cone-example",
    "triangle-244",
    "baobab-c4",
];

pub fn named_game(id: &str) -> Result<ConstructedGame> {
    match id {
        "big-bow" => bow(&BowSpec::big()),
        "medium-bow" => bow(&BowSpec::medium()),
        "cone-example" => cone_example(),
        "triangle-244" => triangle_244("A", "B", "C"),
        "baobab-c4" => {
            let game = Game::cycle(&[("A", 3), ("B", 3), ("C", 3), ("D", 3)])?;
            let s = BoardBridge::new(&game)?.to_strategy(&win3_arrows())?;
            ConstructedGame::given(game, s)
        }
        _ => Err(HatsError::Precondition(format!(
            "unknown named game `{id}`; expected one of {}",
            NAMED_GAMES.join(", ")
        ))),
    }
}

fn bow(spec: &BowSpec) -> Result<ConstructedGame> {
    ConstructedGame::given(spec.game()?, bow_strategy(spec)?)
}

/// A winning cycle through `O` and `A` with hatnesses `4, 2, 3, ..., 3`.
fn cycle_component(index: usize, threes: usize) -> Result<ConeComponent> {
    let marked = format!("A{index}");
    let mut names = vec!["O".to_string(), marked.clone()];
    names.extend((0..threes).map(|k| format!("{}{index}", (b'B' + k as u8) as char)));
    let mut vertices: Vec<(&str, u32)> = vec![(&names[0], 4), (&names[1], 2)];
    vertices.extend(names[2..].iter().map(|n| (n.as_str(), 3)));
    let game = Game::cycle(&vertices)?;
    let v = cycle_classify(&game, &marked)?;
    let s = v
        .witness
        .ok_or_else(|| HatsError::Internal(format!("cycle component {index} has no witness")))?;
    Ok(ConeComponent {
        game: ConstructedGame::given(game, s)?,
        apex: "O".into(),
        marked,
    })
}

/// The triangle with three colors everywhere under a common apex, joined
/// through a 5-cycle and two 4-cycles.
fn cone_example() -> Result<ConstructedGame> {
    let hats = [3, 3, 3];
    let base = ConstructedGame::given(clique_game(&hats)?, arithmetic_clique_strategy(&hats)?)?;
    let parts = [
        cycle_component(1, 3)?,
        cycle_component(2, 2)?,
        cycle_component(3, 2)?,
    ];
    cone(&base, &parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::Check;
    use crate::verdict::Status;

    #[test]
    fn small_named_games_are_verified() {
        for id in ["medium-bow", "cone-example", "triangle-244", "baobab-c4"] {
            let g = named_game(id).unwrap();
            assert_eq!(g.status, Status::Winning, "{id}");
            assert_eq!(g.check, Check::Verified, "{id}");
        }
    }

    #[test]
    fn cone_example_shape() {
        let g = named_game("cone-example").unwrap();
        let mut h = g.game.hatnesses().to_vec();
        h.sort_unstable();
        assert_eq!(h, vec![3, 3, 3, 3, 3, 3, 3, 4, 6, 6, 6]);
        assert_eq!(g.game.hatness(g.game.index_of("O").unwrap()), 4);
        assert_eq!(g.game.degree(g.game.index_of("O").unwrap()), 6);
    }

    #[test]
    fn unknown_id() {
        assert!(named_game("small-bow").is_err());
    }
}
