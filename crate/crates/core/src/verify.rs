//! Exhaustive checking of strategies over all arrangements.
//!
//! Arrangements are scanned in parallel chunks of consecutive ranks. Each
//! chunk walks an odometer and keeps every vertex's view index up to date
//! incrementally, so a step costs time proportional to the degrees of the
//! vertices whose color changed.

use rayon::prelude::*;

use crate::error::Result;
use crate::game::{advance, unrank, Arrangement, Color, Game};
use crate::strategy::Strategy;

/// Outcome of [`verify_strategy`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub winning: bool,
    /// Lexicographically first arrangement on which nobody guesses right.
    pub first_losing: Option<Arrangement>,
    pub arrangements: u64,
}

pub(crate) struct Scanner<'a> {
    radices: &'a [u32],
    tables: Vec<&'a [Color]>,
    /// For each vertex `u`, the pairs `(v, stride of u in v's view)`.
    incidence: Vec<Vec<(usize, usize)>>,
    pub total: u64,
}

impl<'a> Scanner<'a> {
    pub fn new(game: &'a Game, strategy: &'a Strategy) -> Result<Self> {
        strategy.validate(game)?;
        let total = game.enumerable_count()?;
        let mut incidence = vec![Vec::new(); game.len()];
        for v in 0..game.len() {
            let mut stride = 1usize;
            for &u in game.neighbors(v) {
                incidence[u].push((v, stride));
                stride *= game.hatness(u) as usize;
            }
        }
        Ok(Scanner {
            radices: game.hatnesses(),
            tables: (0..game.len()).map(|v| strategy.table(v)).collect(),
            incidence,
            total,
        })
    }

    pub fn correct(&self, v: usize, colors: &[Color], views: &[usize]) -> bool {
        self.tables[v][views[v]] == colors[v]
    }

    /// Visits ranks `start..end`; stops early and returns the rank where
    /// `visit` returned false.
    pub fn scan(
        &self,
        start: u64,
        end: u64,
        mut visit: impl FnMut(&[Color], &[usize]) -> bool,
    ) -> Option<u64> {
        if start >= end {
            return None;
        }
        let n = self.radices.len();
        let mut colors = unrank(self.radices, start);
        let mut views = vec![0usize; n];
        for (u, inc) in self.incidence.iter().enumerate() {
            for &(v, stride) in inc {
                views[v] += colors[u] as usize * stride;
            }
        }
        let mut rank = start;
        loop {
            if !visit(&colors, &views) {
                return Some(rank);
            }
            rank += 1;
            if rank >= end {
                return None;
            }
            for i in (0..n).rev() {
                let old = colors[i] as usize;
                if colors[i] + 1 < self.radices[i] {
                    colors[i] += 1;
                    for &(v, stride) in &self.incidence[i] {
                        views[v] += stride;
                    }
                    break;
                }
                colors[i] = 0;
                for &(v, stride) in &self.incidence[i] {
                    views[v] -= old * stride;
                }
            }
        }
    }

    pub fn chunks(&self) -> Vec<(u64, u64)> {
        let threads = rayon::current_num_threads() as u64;
        let size = (self.total / (threads * 16)).max(1 << 14);
        let mut out = Vec::new();
        let mut s = 0;
        while s < self.total {
            out.push((s, (s + size).min(self.total)));
            s += size;
        }
        out
    }

    /// Lowest rank on which `bad` holds, scanning chunks in parallel.
    pub fn find_first(&self, bad: impl Fn(&[Color], &[usize]) -> bool + Sync) -> Option<u64> {
        self.chunks()
            .into_par_iter()
            .find_map_first(|(s, e)| self.scan(s, e, |c, w| !bad(c, w)))
    }

    /// Sum of `f` over all arrangements.
    pub fn sum(&self, f: impl Fn(&[Color], &[usize]) -> u64 + Sync) -> u64 {
        self.chunks()
            .into_par_iter()
            .map(|(s, e)| {
                let mut acc = 0;
                self.scan(s, e, |c, w| {
                    acc += f(c, w);
                    true
                });
                acc
            })
            .sum()
    }
}

/// Checks `strategy` on every arrangement of `game`.
pub fn verify_strategy(game: &Game, strategy: &Strategy) -> Result<Verification> {
    let sc = Scanner::new(game, strategy)?;
    let n = game.len();
    let first = sc.find_first(|c, w| (0..n).all(|v| !sc.correct(v, c, w)));
    Ok(Verification {
        winning: first.is_none(),
        first_losing: first.map(|r| Arrangement(unrank(game.hatnesses(), r))),
        arrangements: sc.total,
    })
}

/// Number of arrangements on which `v` guesses correctly.
pub fn correct_count(game: &Game, strategy: &Strategy, v: usize) -> Result<u64> {
    let sc = Scanner::new(game, strategy)?;
    Ok(sc.sum(|c, w| sc.correct(v, c, w) as u64))
}

/// Correct-guess counts for all vertices in one pass.
pub fn correct_counts(game: &Game, strategy: &Strategy) -> Result<Vec<u64>> {
    let sc = Scanner::new(game, strategy)?;
    let n = game.len();
    let counts = sc
        .chunks()
        .into_par_iter()
        .map(|(s, e)| {
            let mut acc = vec![0u64; n];
            sc.scan(s, e, |c, w| {
                for (v, a) in acc.iter_mut().enumerate() {
                    *a += sc.correct(v, c, w) as u64;
                }
                true
            });
            acc
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(counts)
}

/// True when every arrangement has exactly one correct guess.
pub fn is_precise(game: &Game, strategy: &Strategy) -> Result<bool> {
    let sc = Scanner::new(game, strategy)?;
    let n = game.len();
    let bad = sc.find_first(|c, w| (0..n).filter(|&v| sc.correct(v, c, w)).count() != 1);
    Ok(bad.is_none())
}

/// Vertices guessing correctly on one arrangement.
pub fn winners(game: &Game, strategy: &Strategy, colors: &[Color]) -> Vec<usize> {
    (0..game.len())
        .filter(|&v| strategy.guess(v, colors) == colors[v])
        .collect()
}

/// Straight-line reference used by tests: no chunking, no incremental views.
pub fn verify_naive(game: &Game, strategy: &Strategy) -> Result<Verification> {
    strategy.validate(game)?;
    let total = game.enumerable_count()?;
    let mut colors = vec![0; game.len()];
    for _ in 0..total {
        if winners(game, strategy, &colors).is_empty() {
            return Ok(Verification {
                winning: false,
                first_losing: Some(Arrangement(colors)),
                arrangements: total,
            });
        }
        advance(game.hatnesses(), &mut colors);
    }
    Ok(Verification {
        winning: true,
        first_losing: None,
        arrangements: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical(n: u32) -> (Game, Strategy) {
        let names: Vec<String> = (0..n).map(|i| format!("S{i}")).collect();
        let vs: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), n)).collect();
        let g = Game::clique(&vs).unwrap();
        let s = Strategy::tabulate(&g, |v, view| {
            let others: u32 = view.neighbors().iter().map(|&u| view.color(u)).sum();
            (v as u32 + 1 + n * n - others % n) % n
        })
        .unwrap();
        (g, s)
    }

    #[test]
    fn classical_clique_is_precise() {
        for n in 1..=4 {
            let (g, s) = classical(n);
            let r = verify_strategy(&g, &s).unwrap();
            assert!(r.winning);
            assert!(is_precise(&g, &s).unwrap());
            let total = g.enumerable_count().unwrap();
            for v in 0..g.len() {
                assert_eq!(correct_count(&g, &s, v).unwrap(), total / n as u64);
            }
        }
    }

    #[test]
    fn reports_first_losing_arrangement() {
        let g = Game::path(&[("A", 2), ("B", 2), ("C", 2)]).unwrap();
        let s = Strategy::constant(&g).unwrap();
        let r = verify_strategy(&g, &s).unwrap();
        assert!(!r.winning);
        assert_eq!(r.first_losing, Some(Arrangement(vec![1, 1, 1])));
        assert_eq!(r, verify_naive(&g, &s).unwrap());
    }

    #[test]
    fn parallel_scan_matches_naive_on_large_game() {
        // big enough for several chunks
        let g = Game::cycle(&[("A", 7), ("B", 6), ("C", 5), ("D", 7), ("E", 6), ("F", 5)]).unwrap();
        let s = Strategy::tabulate(&g, |v, view| {
            let t: u32 = view
                .neighbors()
                .iter()
                .map(|&u| view.color(u) * (u as u32 + 1))
                .sum();
            (t + v as u32) % g.hatness(v)
        })
        .unwrap();
        assert_eq!(
            verify_strategy(&g, &s).unwrap(),
            verify_naive(&g, &s).unwrap()
        );
    }
}
