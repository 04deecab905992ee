//! Two cliques sharing a vertex. The big bow has 9,250,000 arrangements.

use std::time::Instant;

use hats::catalogue::{bow_strategy, BowSpec};
use hats::verify_strategy;

fn main() -> hats::Result<()> {
    for (name, spec) in [("medium", BowSpec::medium()), ("big", BowSpec::big())] {
        let game = spec.game()?;
        let s = bow_strategy(&spec)?;
        let t = Instant::now();
        let v = verify_strategy(&game, &s)?;
        println!(
            "{name} bow {:?}: winning {} over {} arrangements in {:.2?}",
            game.hatnesses(),
            v.winning,
            v.arrangements,
            t.elapsed()
        );
    }
    Ok(())
}
