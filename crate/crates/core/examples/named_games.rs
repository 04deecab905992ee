//! The example games with their witnesses.

use hats::catalogue::{named_game, NAMED_GAMES};
use hats::verify_strategy;

fn main() -> hats::Result<()> {
    for id in NAMED_GAMES {
        let cg = named_game(id)?;
        let v = verify_strategy(&cg.game, cg.witness()?)?;
        println!(
            "{id}: {} vertices, hatnesses {:?}, winning {} over {} arrangements",
            cg.game.len(),
            cg.game.hatnesses(),
            v.winning,
            v.arrangements
        );
    }
    Ok(())
}
