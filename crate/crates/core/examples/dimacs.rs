//! Writes a game as CNF, decides it with the built-in DPLL and decodes the
//! model back into a strategy.

use hats::solver::{decode_model, dpll, parse_dimacs, to_dimacs};
use hats::{verify_strategy, Game};

fn main() -> hats::Result<()> {
    for g in [
        Game::clique(&[("A", 2), ("B", 3), ("C", 6)])?,
        Game::clique(&[("A", 3), ("B", 3), ("C", 3)])?,
        Game::path(&[("A", 2), ("B", 3), ("C", 2)])?,
    ] {
        let text = to_dimacs(&g)?;
        let cnf = parse_dimacs(&text)?;
        print!(
            "{:?}: {} vars, {} clauses, ",
            g.hatnesses(),
            cnf.num_vars,
            cnf.clauses.len()
        );
        match dpll(&cnf, None)? {
            Some(model) => {
                let s = decode_model(&g, &model)?;
                println!(
                    "satisfiable, decoded strategy wins: {}",
                    verify_strategy(&g, &s)?.winning
                );
            }
            None => println!("unsatisfiable"),
        }
    }
    Ok(())
}
