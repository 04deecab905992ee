//! Builds the clique with hatnesses 2, 3, 6, checks the arithmetic strategy
//! on every arrangement and round-trips both through JSON.

use hats::catalogue::{arithmetic_clique_strategy, clique_game};
use hats::{correct_count, is_precise, verify_strategy, Game, Strategy};

fn main() -> hats::Result<()> {
    let hats = [2, 3, 6];
    let game = clique_game(&hats)?;
    let strategy = arithmetic_clique_strategy(&hats)?;

    let v = verify_strategy(&game, &strategy)?;
    println!(
        "winning: {} over {} arrangements",
        v.winning, v.arrangements
    );
    for u in 0..game.len() {
        println!(
            "  {} guesses right {} times",
            game.name(u),
            correct_count(&game, &strategy, u)?
        );
    }
    println!("precise: {}", is_precise(&game, &strategy)?);

    let game2 = Game::from_json(&game.to_json())?;
    let strategy2 = Strategy::from_json(&game2, &strategy.to_json(&game))?;
    assert_eq!(game.digest(), game2.digest());
    assert!(verify_strategy(&game2, &strategy2)?.winning);
    println!("round trip ok, digest {}", game2.digest());

    let bad = Strategy::constant(&game)?;
    let r = verify_strategy(&game, &bad)?;
    println!(
        "constant strategy loses on {:?}",
        r.first_losing.map(|a| a.0)
    );
    Ok(())
}
