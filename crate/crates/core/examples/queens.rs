//! Queen check: stored two-board strategies and the five
//! player game on 11x11 boards.

use hats::rook::{
    queen_4x4_5x5, queen_4x5_chessboard, queen_4x5_coloring, queen_5player_11x11,
    verify_board_by_enumeration, Piece,
};

fn main() -> hats::Result<()> {
    for (name, (pair, s)) in [
        ("4x5 coloring", queen_4x5_coloring()),
        ("4x5 chessboard", queen_4x5_chessboard()),
        ("4x4 vs 5x5", queen_4x4_5x5()),
    ] {
        let c = verify_board_by_enumeration(&pair, &s, Piece::Queen)?;
        println!("{name} {pair}: winning {}", c.winning);
    }
    let r = queen_5player_11x11(1_000_000, 1_000_000, 0)?;
    println!(
        "five queens at {:?}: {} cells dominated, labeling valid {}, {} + {} placements, {} failures",
        r.queens, r.dominated, r.labeling_valid, r.exhaustive_checked, r.random_checked, r.failures
    );
    Ok(())
}
