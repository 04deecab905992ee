//! Plain enumeration of all strategies; the reference the search is tested
//! against.

use crate::error::{HatsError, Result};
use crate::game::{Arrangements, Color, Game};
use crate::strategy::{view_index, Strategy};
use crate::verdict::Verdict;

/// Number of deterministic strategies, `prod_v h(v)^(views of v)`, if it fits.
pub fn strategy_space(game: &Game) -> Option<u64> {
    let mut total = 1u64;
    for v in 0..game.len() {
        let views = game.view_count(v).ok()? as u32;
        total = total.checked_mul((game.hatness(v) as u64).checked_pow(views)?)?;
    }
    Some(total)
}

/// Tries every strategy in turn; the first winning one (in odometer order,
/// first table entry fastest) is the witness.
pub fn naive_solve(game: &Game, limit: u64) -> Result<Verdict> {
    let space = strategy_space(game)
        .filter(|&s| s <= limit)
        .ok_or_else(|| HatsError::TooLarge(format!("strategy space exceeds {limit}")))?;
    let n = game.len();
    let mut base = Vec::with_capacity(n);
    let mut radix = Vec::new();
    for v in 0..n {
        base.push(radix.len());
        radix.extend(std::iter::repeat(game.hatness(v)).take(game.view_count(v)?));
    }
    let mut cells: Vec<(usize, Color)> = Vec::new();
    for arr in Arrangements::new(game)? {
        for v in 0..n {
            cells.push((base[v] + view_index(game, v, arr.colors()), arr.colors()[v]));
        }
    }
    let mut table = vec![0 as Color; radix.len()];
    for _ in 0..space {
        if cells
            .chunks(n)
            .all(|c| c.iter().any(|&(i, col)| table[i] == col))
        {
            let tables = (0..n)
                .map(|v| table[base[v]..base.get(v + 1).copied().unwrap_or(table.len())].to_vec())
                .collect();
            return Ok(Verdict::winning(
                Some(Strategy::new(game, tables)?),
                "enumeration",
            ));
        }
        for (t, &r) in table.iter_mut().zip(&radix) {
            *t += 1;
            if *t < r {
                break;
            }
            *t = 0;
        }
    }
    Ok(Verdict::losing("exhausted"))
}
