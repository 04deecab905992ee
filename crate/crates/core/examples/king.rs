//! King check on boards up to 7x7.

use hats::rook::{king_check_classify, king_ell, Board, BoardPair};

fn main() {
    print!("   ");
    for c in 1..=7 {
        print!("{c:>3}");
    }
    println!();
    for r in 1..=7 {
        print!("{r:>3}");
        for c in 1..=7 {
            print!("{:>3}", king_ell(&Board { rows: r, cols: c }));
        }
        println!();
    }
    for (l, r) in [
        ("3x6", "3x6"),
        ("2x4", "4x4"),
        ("1x3", "7x7"),
        ("4x4", "4x4"),
    ] {
        let pair = BoardPair::new(l.parse().unwrap(), r.parse().unwrap());
        let v = king_check_classify(&pair);
        println!("{pair}: {} ({})", v.status, v.reason);
    }
}
