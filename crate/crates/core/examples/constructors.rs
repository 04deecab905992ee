//! Growing winning and losing games from small pieces.

use hats::catalogue::p2;
use hats::constructors::{
    attach_leaf, attach_vertex2, glue_losing, losing_pendant, product, sew, ConstructedGame,
};
use hats::solver::{solve, Limits};
use hats::Game;

fn show(label: &str, cg: &ConstructedGame) {
    println!(
        "{label}: {:?} {:?} -> {} ({}, {:?})",
        cg.game.names(),
        cg.game.hatnesses(),
        cg.status,
        cg.reason,
        cg.check
    );
}

fn main() -> hats::Result<()> {
    // two edges glued at A: the path with hatnesses 2, 4, 2
    let path = product(&p2("B", "A")?, &p2("A", "C")?, "A")?;
    show("product", &path);

    let cycle = attach_vertex2(&path, "B", "C", "D")?;
    show("attach a 2 to B and C", &cycle);

    let leaf = attach_leaf(&cycle, "A", 3, "E")?;
    show("leaf", &leaf);

    let sewn = sew(&cycle, "D", &p2("X", "Y")?, "X")?;
    show("sew", &sewn);

    let losing = ConstructedGame::assumed_losing(Game::clique(&[("S1", 3), ("S2", 3)])?, "sum < 1");
    let pendant = losing_pendant(&losing, "S1", "P")?;
    show("losing pendant", &pendant);
    let glued = glue_losing(
        &pendant,
        &ConstructedGame::assumed_losing(Game::path(&[("S1", 2), ("T", 5)])?, "sum < 1"),
        "S1",
    )?;
    show("glue losing", &glued);
    let check = solve(&glued.game, &Limits::default())?;
    println!("solver on the glued game: {}", check.verdict.status);
    Ok(())
}
