//! Solves every game on the 4-cycle with hatnesses in {2, 3, 4} twice: by
//! the general constraint search and through rook check.

use std::time::Instant;

use hats::solver::{solve, solve_c4_via_rook, Limits};
use hats::Game;

fn main() -> hats::Result<()> {
    let limits = Limits {
        nodes: Some(50_000_000),
        ..Limits::default()
    };
    let mut disagreements = 0;
    for code in 0..81u32 {
        let h: Vec<u32> = (0..4).map(|k| 2 + code / 3u32.pow(k) % 3).collect();
        let game = Game::cycle(&[("A", h[0]), ("B", h[1]), ("C", h[2]), ("D", h[3])])?;
        let t = Instant::now();
        let csp = solve(&game, &limits)?;
        let csp_time = t.elapsed();
        let rook = solve_c4_via_rook(&game, &limits)?;
        let agree = csp.verdict.status == rook.verdict.status;
        disagreements += !agree as u32;
        println!(
            "{:?}: csp {} ({} nodes, {:.2?}), rook {} ({} nodes){}",
            h,
            csp.verdict.status,
            csp.stats.nodes,
            csp_time,
            rook.verdict.status,
            rook.stats.nodes,
            if agree { "" } else { "  MISMATCH" }
        );
    }
    println!("{disagreements} disagreements");
    Ok(())
}
