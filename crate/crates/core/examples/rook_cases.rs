//! Decides the twelve board pairs of the rook check classification by
//! exhaustive search and compares with the case table.

use std::time::Instant;

use hats::rook::{catalogue_rook, solve_rook, BoardPair};

const CASES: [(&str, &str); 12] = [
    ("1x5", "6x6"),
    ("2x4", "2x7"),
    ("3x3", "3x3"),
    ("2x3", "3x4"),
    ("2x4", "3x3"),
    ("2x2", "4x6"),
    ("2x3", "4x4"),
    ("2x3", "3x5"),
    ("2x4", "3x4"),
    ("2x5", "3x3"),
    ("3x3", "3x4"),
    ("2x2", "5x5"),
];

fn main() -> hats::Result<()> {
    for (l, r) in CASES {
        let pair = BoardPair::new(l.parse()?, r.parse()?);
        let table = catalogue_rook(&pair)?;
        let t = Instant::now();
        let search = solve_rook(&pair, None)?;
        println!(
            "{pair}: table {} ({}), search {} after {} nodes in {:.2?}",
            table.status,
            table.reason,
            search.status,
            search.nodes,
            t.elapsed()
        );
    }
    Ok(())
}
