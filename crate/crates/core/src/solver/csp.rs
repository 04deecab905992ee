//! Backtracking search for a winning strategy.
//!
//! One variable per (vertex, view) with domain `0..h(v)` kept as a bitmask.
//! Every arrangement is a clause "some vertex guesses its own color", i.e.
//! a disjunction of `var = value` literals, one per vertex. Clauses are
//! propagated with two watched literals. On top of that a counting bound
//! prunes nodes where the open variables cannot cover the open clauses, and
//! values that would waste more than the spare coverage.

use std::cmp::Reverse;
use std::time::Instant;

use crate::error::{HatsError, Result};
use crate::game::{Arrangements, Color, Game};
use crate::strategy::view_index;

use super::{Limits, Stats};

/// Largest number of literal occurrences (arrangements times vertices) the
/// clause database may hold.
pub const MAX_OCCURRENCES: u64 = 1 << 27;

/// The constraint problem of a game, before any search state.
#[derive(Clone, Debug)]
pub struct StrategyCsp {
    n: usize,
    var_base: Vec<usize>,
    lit_base: Vec<u32>,
    lit_var: Vec<u32>,
    lit_val: Vec<u8>,
    clause_lits: Vec<u32>,
    occ_start: Vec<u32>,
    occ: Vec<u32>,
}

impl StrategyCsp {
    pub fn new(game: &Game) -> Result<Self> {
        let n = game.len();
        if n == 0 {
            return Err(HatsError::Precondition("the game has no vertices".into()));
        }
        if let Some(v) = (0..n).find(|&v| game.hatness(v) > 64) {
            return Err(HatsError::TooLarge(format!(
                "hatness of `{}` exceeds 64",
                game.name(v)
            )));
        }
        let total = game.enumerable_count()?;
        if total.saturating_mul(n as u64) > MAX_OCCURRENCES {
            return Err(HatsError::TooLarge(format!(
                "{total} arrangement clauses of {n} literals"
            )));
        }
        let mut var_base = Vec::with_capacity(n + 1);
        let mut lit_base = Vec::new();
        let mut lit_var = Vec::new();
        let mut lit_val = Vec::new();
        let mut nvars = 0usize;
        for v in 0..n {
            var_base.push(nvars);
            for _ in 0..game.view_count(v)? {
                lit_base.push(lit_var.len() as u32);
                for c in 0..game.hatness(v) {
                    lit_var.push(nvars as u32);
                    lit_val.push(c as u8);
                }
                nvars += 1;
            }
        }
        var_base.push(nvars);
        let mut clause_lits = Vec::with_capacity(total as usize * n);
        for arr in Arrangements::new(game)? {
            let colors = arr.colors();
            for v in 0..n {
                let var = var_base[v] + view_index(game, v, colors);
                clause_lits.push(lit_base[var] + colors[v]);
            }
        }
        // occurrence lists in CSR form
        let nlits = lit_var.len();
        let mut count = vec![0u32; nlits + 1];
        for &l in &clause_lits {
            count[l as usize + 1] += 1;
        }
        for i in 0..nlits {
            count[i + 1] += count[i];
        }
        let mut fill = count.clone();
        let mut occ = vec![0u32; clause_lits.len()];
        for (pos, &l) in clause_lits.iter().enumerate() {
            occ[fill[l as usize] as usize] = (pos / n) as u32;
            fill[l as usize] += 1;
        }
        Ok(StrategyCsp {
            n,
            var_base,
            lit_base,
            lit_var,
            lit_val,
            clause_lits,
            occ_start: count,
            occ,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.lit_base.len()
    }

    pub fn clause_count(&self) -> usize {
        self.clause_lits.len() / self.n
    }

    pub fn literal_count(&self) -> usize {
        self.lit_var.len()
    }

    /// Variable of vertex `v` at view `view`.
    pub fn var(&self, v: usize, view: usize) -> usize {
        self.var_base[v] + view
    }

    fn lits(&self, k: usize) -> &[u32] {
        &self.clause_lits[k * self.n..(k + 1) * self.n]
    }

    fn occurrences(&self, l: u32) -> &[u32] {
        &self.occ[self.occ_start[l as usize] as usize..self.occ_start[l as usize + 1] as usize]
    }
}

pub(crate) enum Outcome {
    Sat(Vec<Vec<Color>>),
    Unsat,
    Budget,
}

/// Search state over a [`StrategyCsp`].
#[derive(Clone)]
pub(crate) struct Search<'a> {
    csp: &'a StrategyCsp,
    dom: Vec<u64>,
    watch: Vec<[u32; 2]>,
    watchers: Vec<Vec<u32>>,
    sat: Vec<u32>,
    open_clauses: usize,
    /// Open clauses containing each literal.
    open_with: Vec<u32>,
    trail: Vec<(u32, u64)>,
    queue: Vec<u32>,
    pub stats: Stats,
    started: Instant,
    limits: Limits,
    // clause sharing kept by `capacity`
    best: Vec<u32>,
    mate: Vec<u32>,
    load: Vec<u32>,
    seen: Vec<u64>,
    stamp: u64,
    reached: Vec<(u32, u32, usize)>,
    queue_clauses: Vec<(u32, usize)>,
    /// Clauses that may be open and unmatched.
    pending: Vec<u32>,
}

const NONE: u32 = u32::MAX;

fn single(d: u64) -> bool {
    d & (d - 1) == 0
}

impl<'a> Search<'a> {
    pub fn new(csp: &'a StrategyCsp, game: &Game, limits: Limits) -> Self {
        let nvars = csp.variable_count();
        let mut dom = vec![0u64; nvars];
        for v in 0..csp.n {
            let full = if game.hatness(v) == 64 {
                u64::MAX
            } else {
                (1u64 << game.hatness(v)) - 1
            };
            dom[csp.var_base[v]..csp.var_base[v + 1]].fill(full);
        }
        let nclauses = csp.clause_count();
        let mut watchers = vec![Vec::new(); csp.literal_count()];
        let mut watch = vec![[0u32; 2]; nclauses];
        if csp.n >= 2 {
            for k in 0..nclauses {
                watch[k] = [0, 1];
                let l = csp.lits(k);
                watchers[l[0] as usize].push(k as u32);
                watchers[l[1] as usize].push(k as u32);
            }
        }
        let open_with = (0..csp.literal_count() as u32)
            .map(|l| csp.occurrences(l).len() as u32)
            .collect();
        Search {
            csp,
            dom,
            watch,
            watchers,
            sat: vec![0; nclauses],
            open_clauses: nclauses,
            open_with,
            trail: Vec::new(),
            queue: Vec::new(),
            stats: Stats::default(),
            started: Instant::now(),
            limits,
            best: vec![0; nvars],
            mate: vec![NONE; nclauses],
            load: vec![0; nvars],
            seen: vec![0; nvars],
            stamp: 0,
            reached: Vec::new(),
            queue_clauses: Vec::new(),
            pending: (0..nclauses as u32).rev().collect(),
        }
    }

    fn bit(&self, l: u32) -> u64 {
        1u64 << self.csp.lit_val[l as usize]
    }

    fn is_false(&self, l: u32) -> bool {
        self.dom[self.csp.lit_var[l as usize] as usize] & self.bit(l) == 0
    }

    fn is_true(&self, l: u32) -> bool {
        self.dom[self.csp.lit_var[l as usize] as usize] == self.bit(l)
    }

    /// Narrows the domain of `var`; false on a wipe-out.
    fn narrow(&mut self, var: u32, new: u64) -> bool {
        let old = self.dom[var as usize];
        let new = old & new;
        if new == old {
            return true;
        }
        if new == 0 {
            return false;
        }
        self.trail.push((var, old));
        self.dom[var as usize] = new;
        let base = self.csp.lit_base[var as usize];
        let mut gone = old & !new;
        while gone != 0 {
            let c = gone.trailing_zeros();
            self.queue.push(base + c);
            for &k in self.csp.occurrences(base + c) {
                self.release(k as usize, base + c);
            }
            gone &= gone - 1;
        }
        if single(new) {
            self.settle(base + new.trailing_zeros(), true);
        }
        true
    }

    /// Marks the clauses of a literal that just became true (or undoes it).
    fn settle(&mut self, l: u32, on: bool) {
        let csp = self.csp;
        for &k in csp.occurrences(l) {
            let k = k as usize;
            if on {
                self.sat[k] += 1;
                if self.sat[k] == 1 {
                    if self.mate[k] != NONE {
                        let l = csp.lits(k)[self.mate[k] as usize];
                        self.release(k, l);
                    }
                    self.open_clauses -= 1;
                    for &m in csp.lits(k) {
                        self.open_with[m as usize] -= 1;
                    }
                }
            } else {
                self.sat[k] -= 1;
                if self.sat[k] == 0 {
                    self.pending.push(k as u32);
                    self.open_clauses += 1;
                    for &m in csp.lits(k) {
                        self.open_with[m as usize] += 1;
                    }
                }
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (var, old) = self.trail.pop().unwrap();
            let cur = self.dom[var as usize];
            if single(cur) && !single(old) {
                let l = self.csp.lit_base[var as usize] + cur.trailing_zeros();
                self.settle(l, false);
            }
            self.dom[var as usize] = old;
        }
        self.queue.clear();
    }

    /// Processes the literals that became false; false on a conflict.
    fn propagate(&mut self) -> bool {
        let csp = self.csp;
        while let Some(l) = self.queue.pop() {
            let mut list = std::mem::take(&mut self.watchers[l as usize]);
            let mut i = 0;
            let mut ok = true;
            while i < list.len() {
                let k = list[i] as usize;
                let lits = csp.lits(k);
                let w = self.watch[k];
                let side = if lits[w[0] as usize] == l { 0 } else { 1 };
                let other = lits[w[1 - side] as usize];
                if self.is_true(other) {
                    i += 1;
                    continue;
                }
                let repl = (0..csp.n as u32)
                    .find(|&j| j != w[0] && j != w[1] && !self.is_false(lits[j as usize]));
                if let Some(j) = repl {
                    self.watch[k][side] = j;
                    self.watchers[lits[j as usize] as usize].push(k as u32);
                    list.swap_remove(i);
                    continue;
                }
                i += 1;
                if self.is_false(other) {
                    ok = false;
                    break;
                }
                self.stats.propagations += 1;
                let var = csp.lit_var[other as usize];
                let b = self.bit(other);
                if !self.narrow(var, b) {
                    ok = false;
                    break;
                }
            }
            self.watchers[l as usize] = list;
            if !ok {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// Checks that the open clauses can be shared out among the open
    /// variables, each taking only clauses one of its values satisfies and no
    /// more than its best value satisfies. The assignment of the previous
    /// call is repaired by augmenting paths.
    fn capacity(&mut self) -> bool {
        let mut cap = 0u64;
        for (var, &d) in self.dom.iter().enumerate() {
            let mut best = 0;
            if !single(d) {
                let base = self.csp.lit_base[var];
                let mut bits = d;
                while bits != 0 {
                    let c = bits.trailing_zeros();
                    best = best.max(self.open_with[(base + c) as usize]);
                    bits &= bits - 1;
                }
            }
            self.best[var] = best;
            cap += best as u64;
        }
        if cap < self.open_clauses as u64 {
            return false;
        }
        let csp = self.csp;
        for var in 0..self.dom.len() {
            if self.load[var] <= self.best[var] {
                continue;
            }
            let base = csp.lit_base[var];
            let mut bits = self.dom[var];
            while bits != 0 && self.load[var] > self.best[var] {
                let l = base + bits.trailing_zeros();
                bits &= bits - 1;
                for &k in csp.occurrences(l) {
                    if self.load[var] <= self.best[var] {
                        break;
                    }
                    self.release(k as usize, l);
                }
            }
        }
        while let Some(k) = self.pending.pop() {
            let k = k as usize;
            if self.sat[k] == 0 && self.mate[k] == NONE && !self.augment(k) {
                self.pending.push(k as u32);
                return false;
            }
        }
        true
    }

    /// Unmatches clause `k` if it is held through literal `l`.
    fn release(&mut self, k: usize, l: u32) {
        let m = self.mate[k];
        if m != NONE && self.csp.lits(k)[m as usize] == l {
            self.mate[k] = NONE;
            self.load[self.csp.lit_var[l as usize] as usize] -= 1;
            if self.sat[k] == 0 {
                self.pending.push(k as u32);
            }
        }
    }

    fn assign(&mut self, k: usize, j: u32) {
        let lits = self.csp.lits(k);
        if self.mate[k] != NONE {
            self.load[self.csp.lit_var[lits[self.mate[k] as usize] as usize] as usize] -= 1;
        }
        self.mate[k] = j;
        self.load[self.csp.lit_var[lits[j as usize] as usize] as usize] += 1;
    }

    /// Finds room for open clause `k`, moving other clauses along a path of
    /// variables if needed.
    fn augment(&mut self, k0: usize) -> bool {
        let csp = self.csp;
        self.stamp += 1;
        let stamp = self.stamp;
        // (clause, position, index of the entry it was reached from); the
        // variable at the position was reached through the clause
        let mut reached = std::mem::take(&mut self.reached);
        reached.clear();
        let mut clauses = std::mem::take(&mut self.queue_clauses);
        clauses.clear();
        clauses.push((k0 as u32, usize::MAX));
        let (mut next_clause, mut next_var) = (0, 0);
        let found = 'search: loop {
            while next_clause < clauses.len() {
                let (k, back) = clauses[next_clause];
                next_clause += 1;
                for (j, &l) in csp.lits(k as usize).iter().enumerate() {
                    let var = csp.lit_var[l as usize] as usize;
                    if self.seen[var] == stamp || self.best[var] == 0 || self.is_false(l) {
                        continue;
                    }
                    self.seen[var] = stamp;
                    reached.push((k, j as u32, back));
                    if self.load[var] < self.best[var] {
                        break 'search Some(reached.len() - 1);
                    }
                }
            }
            if next_var == reached.len() {
                break None;
            }
            // the clauses held by the next variable, which might move
            let (k, j, _) = reached[next_var];
            let var = csp.lit_var[csp.lits(k as usize)[j as usize] as usize] as usize;
            let base = csp.lit_base[var];
            let mut bits = self.dom[var];
            while bits != 0 {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                for &k2 in csp.occurrences(base + c) {
                    let m = self.mate[k2 as usize];
                    if m != NONE
                        && self.sat[k2 as usize] == 0
                        && csp.lits(k2 as usize)[m as usize] == base + c
                    {
                        clauses.push((k2, next_var));
                    }
                }
            }
            next_var += 1;
        };
        if let Some(mut i) = found {
            // shift every clause on the path to its new variable
            loop {
                let (k, j, back) = reached[i];
                self.assign(k as usize, j);
                if back == usize::MAX {
                    break;
                }
                i = back;
            }
        }
        self.reached = reached;
        self.queue_clauses = clauses;
        found.is_some()
    }

    fn out_of_budget(&self) -> bool {
        if let Some(max) = self.limits.nodes {
            if self.stats.nodes > max {
                return true;
            }
        }
        if let Some(t) = self.limits.time {
            if self.stats.nodes % 256 == 0 && self.started.elapsed() >= t {
                return true;
            }
        }
        false
    }

    /// Applies the initial restrictions and unit clauses; false if the
    /// problem is already contradictory.
    pub fn start(&mut self, symmetry: bool) -> bool {
        // vertices with a single color are always right
        for var in 0..self.dom.len() {
            if self.dom[var] == 1 {
                self.settle(self.csp.lit_base[var], true);
            }
        }
        if symmetry {
            // relabeling a vertex's colors maps winning strategies to winning
            // strategies: the first vertex may say 0 on its all-zero view, and
            // with relabelings fixing 0 every other vertex says 0 or 1 there
            for v in 0..self.csp.n {
                let mask = if v == 0 { 1 } else { 3 };
                if !self.narrow(self.csp.var(v, 0) as u32, mask) {
                    return false;
                }
            }
        }
        if self.csp.n == 1 {
            for k in 0..self.csp.clause_count() {
                let l = self.csp.lits(k)[0];
                let (var, b) = (self.csp.lit_var[l as usize], self.bit(l));
                if !self.narrow(var, b) {
                    return false;
                }
            }
        }
        self.propagate() && self.capacity()
    }

    /// The open clause with the fewest non-false literals.
    fn branch_clause(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for k in 0..self.csp.clause_count() {
            if self.sat[k] != 0 {
                continue;
            }
            let live = self
                .csp
                .lits(k)
                .iter()
                .filter(|&&l| !self.is_false(l))
                .count();
            if best.map_or(true, |(b, _)| live < b) {
                best = Some((live, k));
                if live <= 2 {
                    break;
                }
            }
        }
        best.map(|(_, k)| k)
    }

    /// Literals of clause `k` to try, those satisfying the most open clauses
    /// first.
    pub fn branch_literals(&self, k: usize) -> Vec<u32> {
        let mut lits: Vec<u32> = self
            .csp
            .lits(k)
            .iter()
            .copied()
            .filter(|&l| !self.is_false(l))
            .collect();
        lits.sort_by_key(|&l| Reverse(self.open_with[l as usize]));
        lits
    }

    pub fn next_clause(&self) -> Option<usize> {
        if self.open_clauses == 0 {
            None
        } else {
            self.branch_clause()
        }
    }

    /// Sets literal `l` true (or false) and propagates.
    pub fn decide(&mut self, l: u32, value: bool) -> bool {
        let var = self.csp.lit_var[l as usize];
        let b = self.bit(l);
        let ok = if value {
            self.narrow(var, b)
        } else {
            self.narrow(var, !b)
        };
        ok && self.propagate() && self.capacity()
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn solve(&mut self) -> Outcome {
        self.stats.nodes += 1;
        if self.out_of_budget() {
            return Outcome::Budget;
        }
        let Some(k) = self.next_clause() else {
            return Outcome::Sat(self.tables());
        };
        let entry = self.mark();
        for l in self.branch_literals(k) {
            let mark = self.mark();
            if self.decide(l, true) {
                match self.solve() {
                    Outcome::Unsat => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
            if !self.decide(l, false) {
                break;
            }
        }
        self.undo_to(entry);
        Outcome::Unsat
    }

    /// Guess tables with the lowest remaining value of every variable.
    fn tables(&self) -> Vec<Vec<Color>> {
        (0..self.csp.n)
            .map(|v| {
                (self.csp.var_base[v]..self.csp.var_base[v + 1])
                    .map(|var| self.dom[var].trailing_zeros() as Color)
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_follow_the_closed_forms() {
        let g = Game::cycle(&[("A", 2), ("B", 3), ("C", 2), ("D", 4)]).unwrap();
        let csp = StrategyCsp::new(&g).unwrap();
        assert_eq!(csp.clause_count(), 48);
        // views: A sees B,D = 12; B sees A,C = 4; C sees B,D = 12; D sees A,C = 4
        assert_eq!(csp.variable_count(), 32);
        assert_eq!(csp.literal_count(), 12 * 2 + 4 * 3 + 12 * 2 + 4 * 4);
    }

    #[test]
    fn clause_literals_are_the_guesses_that_would_be_right() {
        let g = Game::path(&[("A", 2), ("B", 3)]).unwrap();
        let csp = StrategyCsp::new(&g).unwrap();
        // arrangement rank 5 = (A=1, B=2): A sees B=2, B sees A=1
        let lits = csp.lits(5);
        assert_eq!(csp.lit_var[lits[0] as usize] as usize, csp.var(0, 2));
        assert_eq!(csp.lit_val[lits[0] as usize], 1);
        assert_eq!(csp.lit_var[lits[1] as usize] as usize, csp.var(1, 1));
        assert_eq!(csp.lit_val[lits[1] as usize], 2);
    }
}
