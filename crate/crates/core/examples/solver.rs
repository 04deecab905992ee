//! Decides small games by search and compares the three methods.

use hats::solver::{solve, solve_with, Limits, Method};
use hats::Game;

fn main() -> hats::Result<()> {
    let games = [
        Game::clique(&[("A", 2), ("B", 3), ("C", 6)])?,
        Game::clique(&[("A", 3), ("B", 3), ("C", 4)])?,
        Game::path(&[("A", 2), ("B", 4), ("C", 2)])?,
        Game::path(&[("A", 2), ("B", 5), ("C", 2)])?,
        Game::cycle(&[("A", 3), ("B", 3), ("C", 3), ("D", 3)])?,
        Game::cycle(&[("A", 2), ("B", 4), ("C", 3), ("D", 4)])?,
    ];
    for g in &games {
        let r = solve(g, &Limits::default())?;
        println!(
            "{:?} on {} edges: {} ({}), {} nodes, {} ms",
            g.hatnesses(),
            g.edges().len(),
            r.verdict.status,
            r.verdict.reason,
            r.stats.nodes,
            r.stats.elapsed_ms
        );
    }
    let tiny = Game::path(&[("A", 2), ("B", 2), ("C", 2)])?;
    for m in [Method::Csp, Method::Naive] {
        println!(
            "{m:?} on P3(2,2,2): {}",
            solve_with(&tiny, m, &Limits::default())?.verdict.status
        );
    }
    let budget = solve(
        &Game::clique(&[("A", 3), ("B", 3), ("C", 4), ("D", 5)])?,
        &Limits::nodes(50),
    )?;
    println!("K4(3,3,4,5) with 50 nodes: {}", budget.verdict.status);
    Ok(())
}
