use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::catalogue::path_2442;
use crate::constructors::{extend, restrict};
use crate::error::{HatsError, Result};
use crate::game::Game;

use super::{
    verify_board_strategy, win3_strategy as win3_solved, win4_strategy, win5_strategy, Board,
    BoardBridge, BoardPair, BoardVerdict, CellSet, Piece, RookStrategyPair,
};

enum Found {
    Sat(Vec<usize>),
    Unsat,
    Budget,
}

struct Ctx<'a> {
    n: usize,
    full: CellSet,
    /// `weak[i]`: left cells from which the piece misses a king on `i`.
    weak: Vec<Vec<usize>>,
    right_attack: Vec<CellSet>,
    right: Board,
    canonical: bool,
    budget: Option<u64>,
    nodes: &'a AtomicU64,
    out_of_budget: &'a AtomicBool,
}

#[derive(Clone)]
struct State {
    placed: Vec<usize>,
    /// `allowed[l]`: right cells that may still carry label `l`.
    allowed: Vec<CellSet>,
    rows_used: usize,
    cols_used: usize,
}

impl Ctx<'_> {
    fn candidates(&self, st: &State) -> Vec<usize> {
        let m = self.right.cells();
        if !self.canonical {
            return (0..m).collect();
        }
        let rows = (st.rows_used + 1).min(self.right.rows);
        let cols = (st.cols_used + 1).min(self.right.cols);
        (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| self.right.cell(r, c))
            .collect()
    }

    /// Places the next piece on `cell`; false if some right cell is left
    /// without an admissible label.
    fn place(&self, st: &mut State, cell: usize) -> bool {
        let i = st.placed.len();
        for &l in &self.weak[i] {
            st.allowed[l] &= self.right_attack[cell];
        }
        st.placed.push(cell);
        let (r, c) = self.right.coords(cell);
        st.rows_used = st.rows_used.max(r + 1);
        st.cols_used = st.cols_used.max(c + 1);
        st.allowed.iter().fold(0, |u, &a| u | a) == self.full
    }

    fn search(&self, st: &State) -> Found {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| count > b) {
            self.out_of_budget.store(true, Ordering::Relaxed);
            return Found::Budget;
        }
        if st.placed.len() == self.n {
            return Found::Sat(st.placed.clone());
        }
        let mut budget_hit = false;
        for cell in self.candidates(st) {
            let mut next = st.clone();
            if !self.place(&mut next, cell) {
                continue;
            }
            match self.search(&next) {
                Found::Sat(p) => return Found::Sat(p),
                Found::Budget => {
                    budget_hit = true;
                    break;
                }
                Found::Unsat => {}
            }
        }
        if budget_hit {
            Found::Budget
        } else {
            Found::Unsat
        }
    }
}

/// Exhaustive search over the right player's placements, one left cell at a
/// time. A placement extends to a winning pair iff every right cell keeps an
/// admissible label: cell `q` may carry label `l` when the piece on `r_i`
/// attacks `q` for every `i` that `l` does not attack. With the rook, right
/// rows and columns are introduced in order of first use, which removes the
/// row and column permutations of the right board.
pub fn solve_board(
    pair: &BoardPair,
    piece: Piece,
    budget: Option<u64>,
    symmetry: bool,
) -> Result<BoardVerdict> {
    if pair.left.cells() > pair.right.cells() {
        let mut v = solve_board(&pair.swapped(), piece, budget, symmetry)?;
        v.witness = v.witness.map(|w| w.swapped());
        return Ok(v);
    }
    let (left, right) = (pair.left, pair.right);
    let left_attack = piece.attack_table(&left);
    let nodes = AtomicU64::new(0);
    let out_of_budget = AtomicBool::new(false);
    let ctx = Ctx {
        n: left.cells(),
        full: right.all(),
        weak: (0..left.cells())
            .map(|i| {
                (0..left.cells())
                    .filter(|&l| left_attack[l] >> i & 1 == 0)
                    .collect()
            })
            .collect(),
        right_attack: piece.attack_table(&right),
        right,
        canonical: symmetry && piece == Piece::Rook,
        budget,
        nodes: &nodes,
        out_of_budget: &out_of_budget,
    };
    let root = State {
        placed: Vec::new(),
        allowed: vec![right.all(); left.cells()],
        rows_used: 0,
        cols_used: 0,
    };
    let mut prefixes = vec![root];
    for _ in 0..2.min(ctx.n) {
        prefixes = prefixes
            .iter()
            .flat_map(|st| {
                ctx.candidates(st).into_iter().filter_map(|c| {
                    let mut next = st.clone();
                    ctx.place(&mut next, c).then_some(next)
                })
            })
            .collect();
    }
    let found = prefixes
        .par_iter()
        .find_map_first(|st| match ctx.search(st) {
            Found::Sat(p) => Some(p),
            _ => None,
        });
    let count = nodes.load(Ordering::Relaxed);
    let mut verdict = match found {
        Some(placed) => {
            let mut st = ctx_state_after(&ctx, &placed);
            let labels = (0..right.cells())
                .map(|q| {
                    (0..left.cells())
                        .find(|&l| st.allowed[l] >> q & 1 == 1)
                        .ok_or_else(|| {
                            HatsError::Internal("placement without admissible labels".into())
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            st.placed = placed;
            let w = RookStrategyPair {
                r_placement: st.placed,
                l_labels: labels,
            };
            if !verify_board_strategy(pair, &w, piece)?.winning {
                return Err(HatsError::Internal(
                    "board search produced a losing strategy".into(),
                ));
            }
            BoardVerdict::winning(w, "search")
        }
        None if out_of_budget.load(Ordering::Relaxed) => BoardVerdict::unknown("budget"),
        None => BoardVerdict::losing("exhausted"),
    };
    verdict.nodes = count;
    Ok(verdict)
}

fn ctx_state_after(ctx: &Ctx<'_>, placed: &[usize]) -> State {
    let mut st = State {
        placed: Vec::new(),
        allowed: vec![ctx.full; ctx.n],
        rows_used: 0,
        cols_used: 0,
    };
    for &c in placed {
        ctx.place(&mut st, c);
    }
    st
}

pub fn solve_rook(pair: &BoardPair, budget: Option<u64>) -> Result<BoardVerdict> {
    solve_board(pair, Piece::Rook, budget, true)
}

/// The one-hot CNF of a two-board check game: variable `i * m + c + 1` puts
/// the right piece on `c` when the left king is on `i`, and variable
/// `n * m + q * n + l + 1` puts the left piece on `l` when the right king is
/// on `q`.
pub fn board_to_dimacs(pair: &BoardPair, piece: Piece) -> String {
    let (n, m) = (pair.left.cells(), pair.right.cells());
    let la = piece.attack_table(&pair.left);
    let ra = piece.attack_table(&pair.right);
    let r = |i: usize, c: usize| i * m + c + 1;
    let l = |q: usize, x: usize| n * m + q * n + x + 1;
    let mut clauses: Vec<Vec<usize>> = Vec::new();
    let mut negs: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        clauses.push((0..m).map(|c| r(i, c)).collect());
        for c in 0..m {
            for d in c + 1..m {
                negs.push((r(i, c), r(i, d)));
            }
        }
    }
    for q in 0..m {
        clauses.push((0..n).map(|x| l(q, x)).collect());
        for x in 0..n {
            for y in x + 1..n {
                negs.push((l(q, x), l(q, y)));
            }
        }
    }
    for i in 0..n {
        for q in 0..m {
            let mut cl: Vec<usize> = (0..m)
                .filter(|&c| ra[c] >> q & 1 == 1)
                .map(|c| r(i, c))
                .collect();
            cl.extend((0..n).filter(|&x| la[x] >> i & 1 == 1).map(|x| l(q, x)));
            clauses.push(cl);
        }
    }
    let mut out = format!(
        "c board {pair} {piece:?}\np cnf {} {}\n",
        2 * n * m,
        clauses.len() + negs.len()
    );
    for cl in &clauses {
        for v in cl {
            write!(out, "{v} ").unwrap();
        }
        out.push_str("0\n");
    }
    for (a, b) in negs {
        writeln!(out, "-{a} -{b} 0").unwrap();
    }
    out
}

const LOSING: [((usize, usize), (usize, usize)); 6] = [
    ((2, 3), (4, 4)),
    ((2, 3), (3, 5)),
    ((2, 4), (3, 4)),
    ((2, 5), (3, 3)),
    ((3, 3), (3, 4)),
    ((2, 2), (5, 5)),
];

fn board(d: (usize, usize)) -> Board {
    Board {
        rows: d.0,
        cols: d.1,
    }
}

fn transpose_cell(b: &Board, cell: usize) -> usize {
    let (r, c) = b.coords(cell);
    b.transposed().cell(c, r)
}

fn transpose_left(s: &RookStrategyPair, left: &Board) -> RookStrategyPair {
    let mut r_placement = vec![0; s.r_placement.len()];
    for (i, &x) in s.r_placement.iter().enumerate() {
        r_placement[transpose_cell(left, i)] = x;
    }
    RookStrategyPair {
        r_placement,
        l_labels: s
            .l_labels
            .iter()
            .map(|&l| transpose_cell(left, l))
            .collect(),
    }
}

fn transpose_right(s: &RookStrategyPair, right: &Board) -> RookStrategyPair {
    transpose_left(&s.swapped(), right).swapped()
}

/// Restricts a strategy to smaller boards sitting in the top-left corners;
/// placements outside are pulled to the nearest row and column.
fn clamp(s: &RookStrategyPair, from: &BoardPair, to: &BoardPair) -> RookStrategyPair {
    let squeeze = |cell: usize, big: &Board, small: &Board| {
        let (r, c) = big.coords(cell);
        small.cell(r.min(small.rows - 1), c.min(small.cols - 1))
    };
    let (fl, fr, tl, tr) = (from.left, from.right, to.left, to.right);
    RookStrategyPair {
        r_placement: (0..tl.cells())
            .map(|i| {
                let (r, c) = tl.coords(i);
                squeeze(s.r_placement[fl.cell(r, c)], &fr, &tr)
            })
            .collect(),
        l_labels: (0..tr.cells())
            .map(|q| {
                let (r, c) = tr.coords(q);
                squeeze(s.l_labels[fr.cell(r, c)], &fl, &tl)
            })
            .collect(),
    }
}

fn win2(pair: &BoardPair) -> RookStrategyPair {
    let (l, r) = (pair.left, pair.right);
    RookStrategyPair {
        r_placement: (0..l.cells())
            .map(|i| r.cell(1 - l.coords(i).0, 0))
            .collect(),
        l_labels: (0..r.cells()).map(|q| l.cell(r.coords(q).0, 0)).collect(),
    }
}

/// The path `2, x, 2` through `A B C` of the 4-cycle, built from the
/// `2, 4, 2` path.
fn win6(pair: &BoardPair) -> Result<RookStrategyPair> {
    let (b, d) = (pair.right.rows as u32, pair.right.cols as u32);
    let path = restrict(&path_2442(&["A", "B", "C"])?, &[("B", b)])?;
    let host = Game::cycle(&[("A", 2), ("B", b), ("C", 2), ("D", d)])?;
    let cg = extend(&path, &host)?;
    let bridge = BoardBridge::new(&cg.game)?;
    bridge.from_strategy(cg.witness()?)
}

fn data_cases() -> &'static [(BoardPair, RookStrategyPair, u8)] {
    static CASES: OnceLock<Vec<(BoardPair, RookStrategyPair, u8)>> = OnceLock::new();
    CASES.get_or_init(|| {
        let p = |a, b| BoardPair::new(board(a), board(b));
        vec![
            (p((3, 3), (3, 3)), win3_solved(), 3),
            (p((2, 3), (3, 4)), win4_strategy(), 4),
            (p((2, 4), (3, 3)), win5_strategy(), 5),
        ]
    })
}

/// Decides rook check from the case table, using that winning on larger
/// boards implies winning on smaller ones and losing on smaller boards
/// implies losing on larger ones. Pairs outside the closure are Unknown.
pub fn catalogue_rook(pair: &BoardPair) -> Result<BoardVerdict> {
    let tl = pair.left.rows > pair.left.cols;
    let tr = pair.right.rows > pair.right.cols;
    let (nl, nr) = (pair.left.normalized(), pair.right.normalized());
    let swap = (nr.rows, nr.cols) < (nl.rows, nl.cols);
    let norm = if swap {
        BoardPair::new(nr, nl)
    } else {
        BoardPair::new(nl, nr)
    };
    let mut v = classify_normalized(&norm)?;
    if let Some(mut w) = v.witness.take() {
        if swap {
            w = w.swapped();
        }
        let mid = BoardPair::new(nl, nr);
        if tl {
            w = transpose_left(&w, &mid.left);
        }
        if tr {
            w = transpose_right(&w, &mid.right);
        }
        if !verify_board_strategy(pair, &w, Piece::Rook)?.winning {
            return Err(HatsError::Internal(format!(
                "catalogue strategy for {pair} is losing"
            )));
        }
        v.witness = Some(w);
    }
    Ok(v)
}

fn classify_normalized(p: &BoardPair) -> Result<BoardVerdict> {
    let (l, r) = (p.left, p.right);
    if l.rows == 1 {
        let w = RookStrategyPair {
            r_placement: vec![0; l.cells()],
            l_labels: vec![0; r.cells()],
        };
        return Ok(BoardVerdict::winning(w, "Win1"));
    }
    if r.rows <= 2 {
        return Ok(BoardVerdict::winning(win2(p), "Win2"));
    }
    if l.fits(&board((2, 2))) && r.rows <= 4 {
        return Ok(BoardVerdict::winning(win6(p)?, "Win6"));
    }
    for (big, s, k) in data_cases() {
        let reason = if *p == *big {
            format!("Win{k}")
        } else {
            format!("Win{k} (larger boards)")
        };
        if l.fits(&big.left) && r.fits(&big.right) {
            return Ok(BoardVerdict::winning(clamp(s, big, p), reason));
        }
        if l.fits(&big.right) && r.fits(&big.left) {
            return Ok(BoardVerdict::winning(
                clamp(&s.swapped(), &big.swapped(), p),
                reason,
            ));
        }
    }
    for (k, (a, b)) in LOSING.iter().enumerate() {
        let (a, b) = (board(*a), board(*b));
        if (a.fits(&l) && b.fits(&r)) || (a.fits(&r) && b.fits(&l)) {
            let exact = a == l && b == r;
            let reason = if exact {
                format!("Lose{}", k + 1)
            } else {
                format!("Lose{} (smaller boards)", k + 1)
            };
            return Ok(BoardVerdict::losing(reason));
        }
    }
    Ok(BoardVerdict::unknown("outside the case table"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rook::verify_board_by_enumeration;
    use crate::verdict::Status;

    fn bp(l: &str, r: &str) -> BoardPair {
        BoardPair::new(l.parse().unwrap(), r.parse().unwrap())
    }

    #[test]
    fn small_search_results() {
        let v = solve_rook(&bp("2x3", "3x4"), None).unwrap();
        assert_eq!(v.status, Status::Winning);
        let w = v.witness.unwrap();
        assert!(
            verify_board_by_enumeration(&bp("2x3", "3x4"), &w, Piece::Rook)
                .unwrap()
                .winning
        );
        assert_eq!(
            solve_rook(&bp("2x2", "5x5"), None).unwrap().status,
            Status::Losing
        );
        assert_eq!(
            solve_rook(&bp("2x5", "3x3"), None).unwrap().status,
            Status::Losing
        );
    }

    #[test]
    fn larger_left_board_is_swapped_back() {
        let pair = bp("3x4", "2x3");
        let v = solve_rook(&pair, None).unwrap();
        assert!(
            verify_board_by_enumeration(&pair, v.witness.as_ref().unwrap(), Piece::Rook)
                .unwrap()
                .winning
        );
    }

    #[test]
    fn symmetry_reduction_keeps_verdicts() {
        for (l, r) in [
            ("2x3", "3x3"),
            ("2x2", "3x5"),
            ("2x3", "2x4"),
            ("3x3", "2x4"),
            ("2x4", "3x3"),
        ] {
            let pair = bp(l, r);
            let a = solve_board(&pair, Piece::Rook, None, true).unwrap();
            let b = solve_board(&pair, Piece::Rook, None, false).unwrap();
            assert_eq!(a.status, b.status, "{pair}");
            assert!(a.nodes <= b.nodes);
        }
    }

    #[test]
    fn budget_is_reported() {
        let v = solve_rook(&bp("2x3", "4x4"), Some(10)).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.reason, "budget");
    }

    #[test]
    fn catalogue_examples() {
        let v = catalogue_rook(&bp("3x4", "3x4")).unwrap();
        assert_eq!(
            (v.status, v.reason.as_str()),
            (Status::Losing, "Lose3 (smaller boards)")
        );
        let v = catalogue_rook(&bp("2x3", "3x3")).unwrap();
        assert_eq!(v.status, Status::Winning);
        assert!(v.reason.starts_with("Win3"));
        let v = catalogue_rook(&bp("9x1", "7x7")).unwrap();
        assert_eq!((v.status, v.reason.as_str()), (Status::Winning, "Win1"));
        let v = catalogue_rook(&bp("5x3", "2x2")).unwrap();
        assert_eq!((v.status, v.reason.as_str()), (Status::Winning, "Win6"));
        let v = catalogue_rook(&bp("4x3", "2x3")).unwrap();
        assert_eq!(v.status, Status::Winning);
        let v = catalogue_rook(&bp("6x2", "2x9")).unwrap();
        assert_eq!((v.status, v.reason.as_str()), (Status::Winning, "Win2"));
    }

    #[test]
    fn catalogue_agrees_with_search_on_small_pairs() {
        let dims: Vec<Board> = (1..=4)
            .flat_map(|r| (r..=4).map(move |c| Board { rows: r, cols: c }))
            .filter(|b| b.cells() <= 9)
            .collect();
        for &l in &dims {
            for &r in &dims {
                let pair = BoardPair::new(l, r.transposed());
                let c = catalogue_rook(&pair).unwrap();
                if c.status == Status::Unknown {
                    continue;
                }
                let s = solve_rook(&pair, Some(5_000_000)).unwrap();
                if s.status != Status::Unknown {
                    assert_eq!(c.status, s.status, "{pair}");
                }
            }
        }
    }

    #[test]
    fn board_cnf_header() {
        let text = board_to_dimacs(&bp("1x2", "1x2"), Piece::Rook);
        assert!(text.contains("p cnf 8 "));
        let cnf = crate::solver::parse_dimacs(&text).unwrap();
        assert_eq!(cnf.num_vars, 8);
        assert_eq!(cnf.clauses.len(), 4 + 2 + 2 + 4);
    }
}
