//! One-hot CNF encoding of the strategy problem in DIMACS format.
//!
//! Boolean variable `offset(v) + view * h(v) + color + 1` says "vertex `v`
//! guesses `color` on view `view`"; offsets follow the canonical vertex order.

use std::fmt::Write as _;

use crate::error::{HatsError, Result};
use crate::game::{Arrangements, Color, Game, FORMAT};
use crate::strategy::{view_index, Strategy};

use super::csp::MAX_OCCURRENCES;

fn offsets(game: &Game) -> Result<(Vec<usize>, usize)> {
    let mut off = Vec::with_capacity(game.len());
    let mut next = 0usize;
    for v in 0..game.len() {
        off.push(next);
        next += game.view_count(v)? * game.hatness(v) as usize;
    }
    Ok((off, next))
}

/// The CNF text, with the game digest and the variable map in comments.
pub fn to_dimacs(game: &Game) -> Result<String> {
    let total = game.enumerable_count()?;
    if total.saturating_mul(game.len() as u64) > MAX_OCCURRENCES {
        return Err(HatsError::TooLarge(format!("{total} arrangement clauses")));
    }
    let (off, nvars) = offsets(game)?;
    let id =
        |v: usize, view: usize, c: Color| off[v] + view * game.hatness(v) as usize + c as usize + 1;
    let mut body = String::new();
    let mut clauses = 0usize;
    for v in 0..game.len() {
        let h = game.hatness(v);
        for view in 0..game.view_count(v)? {
            for c in 0..h {
                write!(body, "{} ", id(v, view, c)).unwrap();
            }
            body.push_str("0\n");
            clauses += 1;
            for c in 0..h {
                for d in c + 1..h {
                    writeln!(body, "-{} -{} 0", id(v, view, c), id(v, view, d)).unwrap();
                    clauses += 1;
                }
            }
        }
    }
    for arr in Arrangements::new(game)? {
        let colors = arr.colors();
        for v in 0..game.len() {
            write!(body, "{} ", id(v, view_index(game, v, colors), colors[v])).unwrap();
        }
        body.push_str("0\n");
        clauses += 1;
    }
    let mut out = format!("c {FORMAT} {}\n", game.digest());
    for v in 0..game.len() {
        for view in 0..game.view_count(v)? {
            for c in 0..game.hatness(v) {
                writeln!(
                    out,
                    "c var {} = {}/{}/{}",
                    id(v, view, c),
                    game.name(v),
                    view,
                    c
                )
                .unwrap();
            }
        }
    }
    writeln!(out, "p cnf {nvars} {clauses}").unwrap();
    out.push_str(&body);
    Ok(out)
}

/// A parsed CNF formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub comments: Vec<String>,
}

/// Meaning of one Boolean variable, read back from a `c var` comment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsVar {
    pub id: usize,
    pub vertex: String,
    pub view: usize,
    pub color: Color,
}

impl Cnf {
    pub fn var_map(&self) -> Result<Vec<DimacsVar>> {
        let bad = |c: &str| HatsError::Parse(format!("malformed variable comment `{c}`"));
        self.comments
            .iter()
            .filter_map(|c| c.strip_prefix("var "))
            .map(|c| {
                let (id, rest) = c.split_once(" = ").ok_or_else(|| bad(c))?;
                let mut parts = rest.rsplitn(3, '/');
                let color = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(c))?;
                let view = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(c))?;
                let vertex = parts.next().ok_or_else(|| bad(c))?.to_string();
                Ok(DimacsVar {
                    id: id.parse().map_err(|_| bad(c))?,
                    vertex,
                    view,
                    color,
                })
            })
            .collect()
    }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut comments = Vec::new();
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('c') {
            comments.push(c.trim_start().to_string());
            continue;
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" {
                return Err(HatsError::Parse(format!(
                    "line {}: bad header `{line}`",
                    no + 1
                )));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| HatsError::Parse(format!("line {}: bad number `{s}`", no + 1)))
            };
            header = Some((num(f[2])?, num(f[3])?));
            continue;
        }
        let (nv, _) = header
            .ok_or_else(|| HatsError::Parse(format!("line {}: clause before header", no + 1)))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| HatsError::Parse(format!("line {}: bad literal `{tok}`", no + 1)))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else if lit.unsigned_abs() as usize > nv {
                return Err(HatsError::Parse(format!(
                    "line {}: variable {lit} out of range",
                    no + 1
                )));
            } else {
                cur.push(lit);
            }
        }
    }
    let (num_vars, nc) = header.ok_or_else(|| HatsError::Parse("missing `p cnf` header".into()))?;
    if !cur.is_empty() {
        return Err(HatsError::Parse(
            "last clause is not terminated by 0".into(),
        ));
    }
    if clauses.len() != nc {
        return Err(HatsError::Parse(format!(
            "header promises {nc} clauses, found {}",
            clauses.len()
        )));
    }
    Ok(Cnf {
        num_vars,
        clauses,
        comments,
    })
}

/// The game digest recorded in the CNF comments, if any.
pub fn dimacs_digest(cnf: &Cnf) -> Option<String> {
    let prefix = format!("{FORMAT} ");
    cnf.comments
        .iter()
        .find_map(|c| c.strip_prefix(&prefix).map(|d| d.trim().to_string()))
}

/// Reads a strategy off a model (`model[i]` is the value of variable `i + 1`);
/// every (vertex, view) must have exactly one true color.
pub fn decode_model(game: &Game, model: &[bool]) -> Result<Strategy> {
    let (off, nvars) = offsets(game)?;
    if model.len() < nvars {
        return Err(HatsError::Parse(format!(
            "model has {} of {nvars} variables",
            model.len()
        )));
    }
    let mut tables = Vec::with_capacity(game.len());
    for v in 0..game.len() {
        let h = game.hatness(v) as usize;
        let mut t = Vec::with_capacity(game.view_count(v)?);
        for view in 0..game.view_count(v)? {
            let at = off[v] + view * h;
            let on: Vec<usize> = (0..h).filter(|&c| model[at + c]).collect();
            if on.len() != 1 {
                return Err(HatsError::InvalidStrategy {
                    vertex: game.name(v).to_string(),
                    index: view,
                    detail: format!("{} colors are true, expected exactly one", on.len()),
                });
            }
            t.push(on[0] as Color);
        }
        tables.push(t);
    }
    Strategy::new(game, tables)
}

/// A small DPLL solver for checking exported formulas. Returns a model, or
/// `None` if the formula is unsatisfiable. Exceeding `budget` decisions is
/// reported as [`HatsError::TooLarge`].
pub fn dpll(cnf: &Cnf, budget: Option<u64>) -> Result<Option<Vec<bool>>> {
    let mut d = Dpll {
        clauses: &cnf.clauses,
        value: vec![0i8; cnf.num_vars + 1],
        trail: Vec::new(),
        decisions: 0,
        budget,
    };
    match d.run()? {
        true => Ok(Some(d.value[1..].iter().map(|&x| x > 0).collect())),
        false => Ok(None),
    }
}

struct Dpll<'a> {
    clauses: &'a [Vec<i32>],
    value: Vec<i8>,
    trail: Vec<usize>,
    decisions: u64,
    budget: Option<u64>,
}

impl Dpll<'_> {
    fn lit(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn set(&mut self, l: i32) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l.unsigned_abs() as usize);
    }

    /// Unit propagation to a fixpoint; returns the branching literal (from
    /// the shortest open clause with a positive literal), `Ok(None)` when all clauses hold, or
    /// `Err(())` on a conflict.
    fn propagate(&mut self) -> std::result::Result<Option<i32>, ()> {
        loop {
            let mut changed = false;
            let mut best: Option<((bool, usize), i32)> = None;
            for c in self.clauses {
                let mut open = 0;
                let mut last = 0;
                let mut sat = false;
                for &l in c {
                    match self.lit(l) {
                        1 => {
                            sat = true;
                            break;
                        }
                        0 => {
                            open += 1;
                            if last == 0 || (l > 0 && last < 0) {
                                last = l;
                            }
                        }
                        _ => {}
                    }
                }
                if sat {
                    continue;
                }
                match open {
                    0 => return Err(()),
                    1 => {
                        self.set(last);
                        changed = true;
                    }
                    _ => {
                        // clauses with a positive literal first: the
                        // at-most-one clauses only say what not to guess
                        let key = (last < 0, open);
                        if best.map_or(true, |(b, _)| key < b) {
                            best = Some((key, last));
                        }
                    }
                }
            }
            if !changed {
                return Ok(best.map(|(_, l)| l));
            }
        }
    }

    fn run(&mut self) -> Result<bool> {
        let mark = self.trail.len();
        let l = match self.propagate() {
            Err(()) => {
                self.undo(mark);
                return Ok(false);
            }
            Ok(None) => return Ok(true),
            Ok(Some(l)) => l,
        };
        self.decisions += 1;
        if self.budget.is_some_and(|b| self.decisions > b) {
            return Err(HatsError::TooLarge("decision budget exhausted".into()));
        }
        for lit in [l, -l] {
            let inner = self.trail.len();
            self.set(lit);
            if self.run()? {
                return Ok(true);
            }
            self.undo(inner);
        }
        self.undo(mark);
        Ok(false)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.value[v] = 0;
        }
    }
}
