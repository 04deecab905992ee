//! Cycles with hatnesses 2, 3 and 4 where one vertex has two colors.

use hats::catalogue::cycle_classify;
use hats::{verify_strategy, Game};

fn main() -> hats::Result<()> {
    let cases: [&[u32]; 8] = [
        &[2, 4, 4],
        &[2, 4, 4, 2],
        &[2, 3, 4, 3],
        &[2, 3, 3, 4],
        &[2, 4, 2, 4, 4],
        &[2, 3, 4, 4, 3],
        &[2, 3, 3, 4, 4, 4],
        &[2, 4, 4, 4, 4],
    ];
    for hats in cases {
        let names: Vec<String> = (0..hats.len()).map(|i| format!("V{i}")).collect();
        let vs: Vec<(&str, u32)> = names
            .iter()
            .map(String::as_str)
            .zip(hats.iter().copied())
            .collect();
        let game = Game::cycle(&vs)?;
        let v = cycle_classify(&game, "V0")?;
        let checked = match &v.witness {
            Some(s) => format!(", witness verifies: {}", verify_strategy(&game, s)?.winning),
            None => String::new(),
        };
        println!(
            "C{}{:?}: {} ({}){checked}",
            hats.len(),
            hats,
            v.status,
            v.reason
        );
    }
    Ok(())
}
