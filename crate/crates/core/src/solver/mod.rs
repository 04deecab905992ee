//! Deciding small games by exhaustive search, and DIMACS export for
//! external SAT solvers.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HatsError, Result};
use crate::game::Game;
use crate::strategy::Strategy;
use crate::verdict::Verdict;
use crate::verify::verify_strategy;

mod csp;
mod dimacs;
mod naive;

pub use csp::{StrategyCsp, MAX_OCCURRENCES};
pub use dimacs::{decode_model, dimacs_digest, dpll, parse_dimacs, to_dimacs, Cnf, DimacsVar};
pub use naive::{naive_solve, strategy_space};

use csp::{Outcome, Search};

/// Search budgets and switches.
#[derive(Clone, Debug)]
pub struct Limits {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
    /// Fix the guesses on the all-zero views (see [`StrategyCsp`]).
    pub symmetry: bool,
    /// Split the first branching over worker threads.
    pub parallel: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            nodes: None,
            time: None,
            symmetry: true,
            parallel: false,
        }
    }
}

impl Limits {
    pub fn nodes(n: u64) -> Self {
        Limits {
            nodes: Some(n),
            ..Limits::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub propagations: u64,
    pub elapsed_ms: u64,
}

impl Stats {
    fn add(&mut self, other: &Stats) {
        self.nodes += other.nodes;
        self.propagations += other.propagations;
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub stats: Stats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Csp,
    Rook,
    Naive,
}

/// Largest strategy space the naive method walks through.
pub const NAIVE_LIMIT: u64 = 10_000_000;

pub fn solve_with(game: &Game, method: Method, limits: &Limits) -> Result<SolveResult> {
    match method {
        Method::Csp => solve(game, limits),
        Method::Rook => solve_c4_via_rook(game, limits),
        Method::Naive => {
            let t = Instant::now();
            let verdict = naive_solve(game, NAIVE_LIMIT)?;
            Ok(SolveResult {
                verdict,
                stats: Stats {
                    elapsed_ms: t.elapsed().as_millis() as u64,
                    ..Stats::default()
                },
            })
        }
    }
}

/// Decides the game by backtracking over its strategy constraint problem.
///
/// With `symmetry` on, searches with and without the symmetry restriction
/// take turns under growing node budgets. Either search is complete, and
/// the restricted one is much faster on losing games but can wander for a
/// long time on winning games with spare capacity.
pub fn solve(game: &Game, limits: &Limits) -> Result<SolveResult> {
    let started = Instant::now();
    let problem = StrategyCsp::new(game)?;
    let mut stats = Stats::default();
    let outcome = if limits.symmetry {
        let mut round = FIRST_ROUND;
        'rounds: loop {
            for symmetry in [true, false] {
                let left = limits.nodes.map(|n| n.saturating_sub(stats.nodes));
                if left == Some(0) {
                    break 'rounds Outcome::Budget;
                }
                let budget = left.map_or(round, |l| l.min(round));
                match run(
                    &problem, game, limits, symmetry, budget, started, &mut stats,
                ) {
                    Outcome::Budget if limits.time.is_some_and(|t| started.elapsed() >= t) => {
                        break 'rounds Outcome::Budget
                    }
                    Outcome::Budget => {}
                    other => break 'rounds other,
                }
            }
            round = round.saturating_mul(4);
        }
    } else {
        let budget = limits.nodes.unwrap_or(u64::MAX);
        run(&problem, game, limits, false, budget, started, &mut stats)
    };
    stats.elapsed_ms = started.elapsed().as_millis() as u64;
    let verdict = match outcome {
        Outcome::Sat(tables) => {
            let s = Strategy::new(game, tables)?;
            if !verify_strategy(game, &s)?.winning {
                return Err(HatsError::Internal(
                    "search produced a losing strategy".into(),
                ));
            }
            Verdict::winning(Some(s), "search")
        }
        Outcome::Unsat => Verdict::losing("exhausted"),
        Outcome::Budget => Verdict::unknown("budget"),
    };
    Ok(SolveResult { verdict, stats })
}

/// Node budget of the first round of [`solve`]; each round has four times
/// the budget of the one before.
const FIRST_ROUND: u64 = 20_000;

fn run(
    problem: &StrategyCsp,
    game: &Game,
    limits: &Limits,
    symmetry: bool,
    nodes: u64,
    started: Instant,
    stats: &mut Stats,
) -> Outcome {
    let time = match limits.time {
        Some(t) if started.elapsed() >= t => return Outcome::Budget,
        Some(t) => Some(t - started.elapsed()),
        None => None,
    };
    let l = Limits {
        nodes: Some(nodes),
        time,
        symmetry,
        parallel: limits.parallel,
    };
    let mut root = Search::new(problem, game, l);
    if !root.start(symmetry) {
        stats.add(&root.stats);
        return Outcome::Unsat;
    }
    if limits.parallel {
        let (o, s) = solve_split(root);
        stats.add(&s);
        o
    } else {
        let o = root.solve();
        stats.add(&root.stats);
        o
    }
}

/// Runs the branches of the root clause on separate threads. Branch `i`
/// makes literal `i` true and the earlier ones false, exactly as the
/// sequential search would; the first satisfiable branch wins.
fn solve_split(root: Search<'_>) -> (Outcome, Stats) {
    let Some(k) = root.next_clause() else {
        let mut r = root;
        let o = r.solve();
        return (o, r.stats);
    };
    let lits = root.branch_literals(k);
    let results: Vec<(Outcome, Stats)> = (0..lits.len())
        .into_par_iter()
        .map(|i| {
            let mut s = root.clone();
            s.stats = Stats::default();
            for &l in &lits[..i] {
                if !s.decide(l, false) {
                    return (Outcome::Unsat, s.stats);
                }
            }
            if !s.decide(lits[i], true) {
                return (Outcome::Unsat, s.stats);
            }
            let o = s.solve();
            (o, s.stats)
        })
        .collect();
    let mut stats = root.stats;
    let mut budget = false;
    let mut found = None;
    for (o, s) in results {
        stats.add(&s);
        match o {
            Outcome::Sat(t) if found.is_none() => found = Some(t),
            Outcome::Budget => budget = true,
            _ => {}
        }
    }
    let o = match found {
        Some(t) => Outcome::Sat(t),
        None if budget => Outcome::Budget,
        None => Outcome::Unsat,
    };
    (o, stats)
}

/// Decides a game on a 4-cycle through the equivalent rook check.
pub fn solve_c4_via_rook(game: &Game, limits: &Limits) -> Result<SolveResult> {
    let started = Instant::now();
    let bridge = crate::rook::BoardBridge::new(game)?;
    let r = crate::rook::solve_rook(&bridge.pair, limits.nodes)?;
    let verdict = match r.status {
        crate::verdict::Status::Winning => {
            let pair = r
                .witness
                .as_ref()
                .expect("winning rook verdict has a strategy");
            let s = bridge.to_strategy(pair)?;
            if !verify_strategy(game, &s)?.winning {
                return Err(HatsError::Internal(
                    "rook strategy does not translate to a winning one".into(),
                ));
            }
            Verdict::winning(Some(s), "rook")
        }
        crate::verdict::Status::Losing => Verdict::losing(r.reason),
        crate::verdict::Status::Unknown => Verdict::unknown(r.reason),
    };
    Ok(SolveResult {
        verdict,
        stats: Stats {
            nodes: r.nodes,
            propagations: 0,
            elapsed_ms: started.elapsed().as_millis() as u64,
        },
    })
}
