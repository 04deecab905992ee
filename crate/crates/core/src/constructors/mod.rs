//! Operations that build new games out of old ones.
//!
//! Winning constructions produce an explicit witness strategy and, when the
//! result is small enough, check it exhaustively before returning. A failed
//! check is a bug in the construction and is reported as
//! [`HatsError::Internal`]. Losing constructions return the game and the rule
//! that makes it losing; they have no witness.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{HatsError, Result};
use crate::game::{Color, Game, Provenance};
use crate::strategy::Strategy;
use crate::verdict::{Status, Verdict};
use crate::verify::verify_strategy;

mod gluing;
mod losing;
mod winning;

pub use gluing::{
    check_predictable, cone, cone_dispatchers, fasten, fasten_single, sew, stitch, ConeComponent,
    DispatchComponent, Predictability,
};
pub use losing::{glue_losing, losing_attach_two, losing_pendant};
pub use winning::{
    attach_leaf, attach_path_zabc, attach_vertex2, attach_vertex2_to_edge, hint_strategy, product,
    remove_leaf, substitute,
};

static VERIFY_BOUND: AtomicU64 = AtomicU64::new(10_000_000);

/// Largest arrangement count for which constructions are checked on the spot.
pub fn verify_bound() -> u64 {
    VERIFY_BOUND.load(Ordering::Relaxed)
}

pub fn set_verify_bound(bound: u64) {
    VERIFY_BOUND.store(bound, Ordering::Relaxed);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// The witness was checked on every arrangement.
    Verified,
    /// Too many arrangements to check under the current bound.
    NotExhaustivelyVerified,
    /// Losing results carry no witness to check.
    NoWitness,
}

/// A game together with its status, witness and construction history.
#[derive(Clone, Debug)]
pub struct ConstructedGame {
    pub game: Game,
    pub status: Status,
    pub reason: String,
    pub witness: Option<Strategy>,
    pub provenance: Provenance,
    pub check: Check,
}

impl ConstructedGame {
    /// Wraps a game with a strategy claimed to win; fails if it does not.
    pub fn given(game: Game, strategy: Strategy) -> Result<Self> {
        strategy.validate(&game)?;
        let r = verify_strategy(&game, &strategy)?;
        if !r.winning {
            return Err(HatsError::Precondition(format!(
                "strategy loses on {:?}",
                r.first_losing.map(|a| a.0).unwrap_or_default()
            )));
        }
        Ok(ConstructedGame {
            game,
            status: Status::Winning,
            reason: "given".into(),
            witness: Some(strategy),
            provenance: Provenance::leaf("given"),
            check: Check::Verified,
        })
    }

    /// A game the caller asserts (or has proved elsewhere) to be losing.
    pub fn assumed_losing(game: Game, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        ConstructedGame {
            game,
            status: Status::Losing,
            provenance: Provenance::leaf(reason.clone()),
            reason,
            witness: None,
            check: Check::NoWitness,
        }
    }

    /// Result of a winning construction; checked when under the bound.
    pub(crate) fn winning(game: Game, strategy: Strategy, provenance: Provenance) -> Result<Self> {
        let reason = provenance.rule.clone();
        let check = if game.arrangement_count()? <= verify_bound() as u128 {
            let r = verify_strategy(&game, &strategy)?;
            if !r.winning {
                return Err(HatsError::Internal(format!(
                    "{reason} produced a strategy losing on {:?}",
                    r.first_losing.map(|a| a.0).unwrap_or_default()
                )));
            }
            Check::Verified
        } else {
            strategy.validate(&game)?;
            Check::NotExhaustivelyVerified
        };
        Ok(ConstructedGame {
            game,
            status: Status::Winning,
            reason,
            witness: Some(strategy),
            provenance,
            check,
        })
    }

    pub(crate) fn losing(game: Game, provenance: Provenance) -> Self {
        ConstructedGame {
            game,
            status: Status::Losing,
            reason: provenance.rule.clone(),
            witness: None,
            provenance,
            check: Check::NoWitness,
        }
    }

    pub fn witness(&self) -> Result<&Strategy> {
        match (&self.status, &self.witness) {
            (Status::Winning, Some(s)) => Ok(s),
            _ => Err(HatsError::Precondition(format!(
                "operand is not a winning game with a witness ({})",
                self.reason
            ))),
        }
    }

    pub(crate) fn require_losing(&self) -> Result<()> {
        if self.status == Status::Losing {
            Ok(())
        } else {
            Err(HatsError::Precondition(format!(
                "operand is not known to be losing ({})",
                self.reason
            )))
        }
    }

    pub fn verdict(&self) -> Verdict {
        Verdict {
            status: self.status,
            witness: self.witness.clone(),
            reason: self.reason.clone(),
            counterexample: None,
        }
    }

    pub fn to_json(&self) -> String {
        self.game.to_json_with_provenance(&self.provenance)
    }
}

/// Lowers hatnesses (monotonicity): views keep their meaning and guesses that
/// no longer exist are replaced by color 0.
pub fn restrict(cg: &ConstructedGame, changes: &[(&str, u32)]) -> Result<ConstructedGame> {
    let old = &cg.game;
    for (name, h) in changes {
        let v = old.index_of(name)?;
        if *h == 0 || *h > old.hatness(v) {
            return Err(HatsError::Precondition(format!(
                "hatness of `{name}` can only be lowered, to at least 1"
            )));
        }
    }
    let game = old.with_hatness(changes)?;
    let gluing: Vec<&str> = changes.iter().map(|c| c.0).collect();
    let provenance = Provenance::node("restrict", &gluing, vec![cg.provenance.clone()]);
    match cg.status {
        Status::Winning => {
            let f = cg.witness()?;
            let s = Strategy::tabulate(&game, |v, view| {
                let g = f.rule_of(v).guess(|u| view.color(u));
                if g < game.hatness(v) {
                    g
                } else {
                    0
                }
            })?;
            ConstructedGame::winning(game, s, provenance)
        }
        _ => Err(HatsError::Precondition(
            "only winning games can be restricted".into(),
        )),
    }
}

/// Embeds a winning game as an induced subgame of `host` (same names and
/// hatnesses). Vertices outside it guess 0; vertices inside ignore them.
pub fn extend(cg: &ConstructedGame, host: &Game) -> Result<ConstructedGame> {
    let f = cg.witness()?;
    let sub = &cg.game;
    let sub_of_host = host.subgame(sub.names())?;
    let mut inner: Vec<Option<usize>> = vec![None; host.len()];
    for x in 0..sub.len() {
        let v = host.index_of(sub.name(x))?;
        if host.hatness(v) != sub.hatness(x) {
            return Err(HatsError::Precondition(format!(
                "hatness of `{}` differs in the host",
                sub.name(x)
            )));
        }
        inner[v] = Some(x);
    }
    for (x, y) in sub.edges() {
        let (u, v) = (host.index_of(sub.name(x))?, host.index_of(sub.name(y))?);
        if !host.has_edge(u, v) {
            return Err(HatsError::Precondition(
                "subgame edge missing in host".into(),
            ));
        }
    }
    if sub_of_host.edges().len() != sub.edges().len() {
        return Err(HatsError::Precondition(
            "subgame is not induced in host".into(),
        ));
    }
    let to_host: Vec<usize> = (0..sub.len())
        .map(|x| host.index_of(sub.name(x)))
        .collect::<Result<_>>()?;
    let s = Strategy::tabulate(host, |v, view| match inner[v] {
        Some(x) => f.rule_of(x).guess(|y| view.color(to_host[y])),
        None => 0,
    })?;
    let provenance = Provenance::node("extend", sub.names(), vec![cg.provenance.clone()]);
    ConstructedGame::winning(host.clone(), s, provenance)
}

/// Renames vertices; the witness carries over unchanged.
pub fn rename(cg: &ConstructedGame, map: &HashMap<String, String>) -> Result<ConstructedGame> {
    let game = cg.game.renamed(map)?;
    let witness = match &cg.witness {
        Some(f) => Some(Strategy::new(
            &game,
            f.rules().iter().map(|r| r.table().to_vec()).collect(),
        )?),
        None => None,
    };
    Ok(ConstructedGame {
        game,
        witness,
        ..cg.clone()
    })
}

/// Re-expresses a winning game on `target`, which must be the same game with
/// its vertices listed in another order.
pub fn reorder(cg: &ConstructedGame, target: &Game) -> Result<ConstructedGame> {
    let f = cg.witness()?;
    let old = &cg.game;
    if old.len() != target.len() {
        return Err(HatsError::Precondition("vertex sets differ".into()));
    }
    let to_old: Vec<usize> = target
        .names()
        .iter()
        .map(|n| old.index_of(n))
        .collect::<Result<_>>()?;
    let mut to_new = vec![0; old.len()];
    for (v, &x) in to_old.iter().enumerate() {
        if target.hatness(v) != old.hatness(x) {
            return Err(HatsError::Precondition(format!(
                "hatness of `{}` differs",
                target.name(v)
            )));
        }
        to_new[x] = v;
    }
    let same_edges = old.edges().len() == target.edges().len()
        && old
            .edges()
            .iter()
            .all(|&(x, y)| target.has_edge(to_new[x], to_new[y]));
    if !same_edges {
        return Err(HatsError::Precondition("edge sets differ".into()));
    }
    let s = Strategy::tabulate(target, |v, view| {
        f.rule_of(to_old[v]).guess(|x| view.color(to_new[x]))
    })?;
    Ok(ConstructedGame {
        game: target.clone(),
        witness: Some(s),
        ..cg.clone()
    })
}

/// Vertex list and edges under construction; turned into a [`Game`] at the end.
#[derive(Default)]
pub(crate) struct Assembly {
    vertices: Vec<(String, u32)>,
    edges: Vec<(usize, usize)>,
}

impl Assembly {
    pub fn add(&mut self, name: &str, h: u32) -> usize {
        self.vertices.push((name.to_string(), h));
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// Copies the edges of `g` through the vertex map (`None` drops the edge).
    pub fn edges_of(&mut self, g: &Game, map: &[Option<usize>]) {
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                self.edge(a, b);
            }
        }
    }

    pub fn build(self) -> Result<Game> {
        Game::from_indices(&self.vertices, &self.edges)
    }
}

pub(crate) fn checked_mul(a: u32, b: u32) -> Result<u32> {
    a.checked_mul(b)
        .ok_or_else(|| HatsError::Overflow(format!("hatness {a} * {b}")))
}

pub(crate) fn checked_add(a: u32, b: u32) -> Result<u32> {
    a.checked_add(b)
        .ok_or_else(|| HatsError::Overflow(format!("hatness {a} + {b}")))
}

/// Color seen by operands that do not distinguish colors `>= h` from 0.
pub(crate) fn fold(c: Color, h: u32) -> Color {
    if c < h {
        c
    } else {
        0
    }
}

pub(crate) fn ensure_disjoint(a: &Game, b: &Game, allowed: &[&str]) -> Result<()> {
    for n in b.names() {
        if a.contains(n) && !allowed.contains(&n.as_str()) {
            return Err(HatsError::Precondition(format!(
                "vertex `{n}` occurs in both operands"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// ⟨P2, 2⟩ with the classical strategy: `a` says `b`'s color, `b` says the other one.
    pub fn p2(a: &str, b: &str) -> ConstructedGame {
        let g = Game::path(&[(a, 2), (b, 2)]).unwrap();
        let s = Strategy::tabulate(&g, |v, view| {
            let other = view.color(1 - v);
            if v == 0 {
                other
            } else {
                1 - other
            }
        })
        .unwrap();
        ConstructedGame::given(g, s).unwrap()
    }

    pub fn single(name: &str) -> ConstructedGame {
        let g = Game::new(&[(name, 1)], &[]).unwrap();
        let s = Strategy::constant(&g).unwrap();
        ConstructedGame::given(g, s).unwrap()
    }
}
