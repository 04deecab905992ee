//! Two-board check games ("rook check" and its queen and king variants).
//!
//! Each player sees only the partner's board and places a piece on their own
//! board; the players win if at least one hidden king is attacked. A rook
//! check on boards `h(A) x h(C)` and `h(B) x h(D)` is the hats game on the
//! 4-cycle `ABCD`.
//!
//! Boards are indexed row-major from the top-left corner and hold at most
//! 128 cells, so cell sets are `u128` masks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HatsError, Result};
use crate::verdict::Status;

mod bridge;
mod king;
mod solve;
mod tables;

pub use bridge::BoardBridge;
pub use king::{king_check_classify, king_ell, king_ell_brute_force, king_split_strategy};
pub use solve::{board_to_dimacs, catalogue_rook, solve_board, solve_rook};
pub use tables::{
    missing_queens, queen_4x4_5x5, queen_4x5_chessboard, queen_4x5_coloring, queen_5player_11x11,
    win3_arrows, win3_strategy, win4_strategy, win5_strategy, FiveQueensReport,
    QUEEN_4X4_UNFAVORABLE,
};

pub type CellSet = u128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Board {
    pub rows: usize,
    pub cols: usize,
}

impl Board {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(HatsError::Precondition(
                "board dimensions must be positive".into(),
            ));
        }
        if rows * cols > 128 {
            return Err(HatsError::TooLarge(format!(
                "{rows}x{cols} board has more than 128 cells"
            )));
        }
        Ok(Board { rows, cols })
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn cell(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn coords(&self, cell: usize) -> (usize, usize) {
        (cell / self.cols, cell % self.cols)
    }

    pub fn all(&self) -> CellSet {
        if self.cells() == 128 {
            u128::MAX
        } else {
            (1u128 << self.cells()) - 1
        }
    }

    pub fn transposed(&self) -> Board {
        Board {
            rows: self.cols,
            cols: self.rows,
        }
    }

    /// Whether this board fits inside `other` without rotation.
    pub fn fits(&self, other: &Board) -> bool {
        self.rows <= other.rows && self.cols <= other.cols
    }

    /// Same board with `rows <= cols`.
    pub fn normalized(&self) -> Board {
        if self.rows <= self.cols {
            *self
        } else {
            self.transposed()
        }
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

impl FromStr for Board {
    type Err = HatsError;

    /// `RxC`, rows first.
    fn from_str(s: &str) -> Result<Self> {
        let (r, c) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| HatsError::Parse(format!("board `{s}` is not of the form RxC")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| HatsError::Parse(format!("board `{s}` is not of the form RxC")))
        };
        Board::new(num(r)?, num(c)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoardPair {
    pub left: Board,
    pub right: Board,
}

impl BoardPair {
    pub fn new(left: Board, right: Board) -> Self {
        BoardPair { left, right }
    }

    pub fn swapped(&self) -> BoardPair {
        BoardPair {
            left: self.right,
            right: self.left,
        }
    }
}

impl fmt::Display for BoardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}), R({})", self.left, self.right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Rook,
    Queen,
    King,
}

impl FromStr for Piece {
    type Err = HatsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rook" => Ok(Piece::Rook),
            "queen" => Ok(Piece::Queen),
            "king" => Ok(Piece::King),
            _ => Err(HatsError::Parse(format!("unknown piece `{s}`"))),
        }
    }
}

impl Piece {
    /// Cells attacked from `cell`, the cell itself included.
    pub fn attack(&self, board: &Board, cell: usize) -> CellSet {
        let (r, c) = board.coords(cell);
        let mut set: CellSet = 0;
        for rr in 0..board.rows {
            for cc in 0..board.cols {
                let (dr, dc) = (rr.abs_diff(r), cc.abs_diff(c));
                let hit = match self {
                    Piece::Rook => dr == 0 || dc == 0,
                    Piece::Queen => dr == 0 || dc == 0 || dr == dc,
                    Piece::King => dr <= 1 && dc <= 1,
                };
                if hit {
                    set |= 1u128 << board.cell(rr, cc);
                }
            }
        }
        set
    }

    /// Attack sets of every cell of `board`.
    pub fn attack_table(&self, board: &Board) -> Vec<CellSet> {
        (0..board.cells()).map(|c| self.attack(board, c)).collect()
    }
}

/// The rook's cross through `cell`.
pub fn cross(board: &Board, cell: usize) -> CellSet {
    Piece::Rook.attack(board, cell)
}

/// Cells of the same board from which a rook does not attack cell `i`.
pub fn weak_cells(board: &Board, i: usize) -> CellSet {
    board.all() & !cross(board, i)
}

pub fn cells_of(set: CellSet) -> Vec<usize> {
    (0..128).filter(|&c| set >> c & 1 == 1).collect()
}

/// Strategies of both players: `r_placement[i]` is where the right player
/// puts the piece on seeing the left king on cell `i`; `l_labels[q]` is where
/// the left player puts it on seeing the right king on cell `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RookStrategyPair {
    pub r_placement: Vec<usize>,
    pub l_labels: Vec<usize>,
}

impl RookStrategyPair {
    pub fn validate(&self, pair: &BoardPair) -> Result<()> {
        let bad = |what: &str, idx: usize, detail: String| HatsError::InvalidStrategy {
            vertex: what.to_string(),
            index: idx,
            detail,
        };
        if self.r_placement.len() != pair.left.cells() {
            return Err(bad(
                "r_placement",
                self.r_placement.len(),
                format!("expected {} entries", pair.left.cells()),
            ));
        }
        if self.l_labels.len() != pair.right.cells() {
            return Err(bad(
                "l_labels",
                self.l_labels.len(),
                format!("expected {} entries", pair.right.cells()),
            ));
        }
        if let Some(i) = self
            .r_placement
            .iter()
            .position(|&r| r >= pair.right.cells())
        {
            return Err(bad("r_placement", i, "cell outside the right board".into()));
        }
        if let Some(q) = self.l_labels.iter().position(|&l| l >= pair.left.cells()) {
            return Err(bad("l_labels", q, "cell outside the left board".into()));
        }
        Ok(())
    }

    /// The same strategies with the roles of the boards exchanged.
    pub fn swapped(&self) -> RookStrategyPair {
        RookStrategyPair {
            r_placement: self.l_labels.clone(),
            l_labels: self.r_placement.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Outcome of checking a strategy pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoardCheck {
    pub winning: bool,
    /// A king pair `(left cell, right cell)` that escapes both pieces.
    pub violation: Option<(usize, usize)>,
}

/// Checks the label condition: for every left king `i`, each right cell
/// labeled with a cell that does not attack `i` must be attacked from `r_i`.
pub fn verify_board_strategy(
    pair: &BoardPair,
    s: &RookStrategyPair,
    piece: Piece,
) -> Result<BoardCheck> {
    s.validate(pair)?;
    let la = piece.attack_table(&pair.left);
    let ra = piece.attack_table(&pair.right);
    for i in 0..pair.left.cells() {
        let weak = pair.left.all() & !la[i];
        let labeled_weak: CellSet = s
            .l_labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| weak >> l & 1 == 1)
            .fold(0, |m, (q, _)| m | 1u128 << q);
        let escaped = labeled_weak & !ra[s.r_placement[i]];
        if escaped != 0 {
            return Ok(BoardCheck {
                winning: false,
                violation: Some((i, escaped.trailing_zeros() as usize)),
            });
        }
    }
    Ok(BoardCheck {
        winning: true,
        violation: None,
    })
}

/// Direct enumeration of all king pairs; the first escaping pair in
/// row-major order over (left, right) is reported.
pub fn verify_board_by_enumeration(
    pair: &BoardPair,
    s: &RookStrategyPair,
    piece: Piece,
) -> Result<BoardCheck> {
    s.validate(pair)?;
    let la = piece.attack_table(&pair.left);
    let ra = piece.attack_table(&pair.right);
    for i in 0..pair.left.cells() {
        for q in 0..pair.right.cells() {
            let left_hit = la[s.l_labels[q]] >> i & 1 == 1;
            let right_hit = ra[s.r_placement[i]] >> q & 1 == 1;
            if !left_hit && !right_hit {
                return Ok(BoardCheck {
                    winning: false,
                    violation: Some((i, q)),
                });
            }
        }
    }
    Ok(BoardCheck {
        winning: true,
        violation: None,
    })
}

pub fn verify_rook_strategy(pair: &BoardPair, s: &RookStrategyPair) -> Result<BoardCheck> {
    verify_board_strategy(pair, s, Piece::Rook)
}

pub fn verify_queen_strategy(pair: &BoardPair, s: &RookStrategyPair) -> Result<BoardCheck> {
    verify_board_strategy(pair, s, Piece::Queen)
}

/// Verdict of a board game, with an explicit strategy pair when winning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoardVerdict {
    pub status: Status,
    pub witness: Option<RookStrategyPair>,
    pub reason: String,
    pub nodes: u64,
}

impl BoardVerdict {
    pub fn winning(witness: RookStrategyPair, reason: impl Into<String>) -> Self {
        BoardVerdict {
            status: Status::Winning,
            witness: Some(witness),
            reason: reason.into(),
            nodes: 0,
        }
    }

    pub fn losing(reason: impl Into<String>) -> Self {
        BoardVerdict {
            status: Status::Losing,
            witness: None,
            reason: reason.into(),
            nodes: 0,
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        BoardVerdict {
            status: Status::Unknown,
            witness: None,
            reason: reason.into(),
            nodes: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_cells_examples() {
        let b = Board::new(2, 3).unwrap();
        assert_eq!(cells_of(weak_cells(&b, 0)), vec![4, 5]);
        assert_eq!(weak_cells(&Board::new(1, 7).unwrap(), 3), 0);
        assert_eq!(cells_of(weak_cells(&Board::new(2, 2).unwrap(), 0)), vec![3]);
    }

    #[test]
    fn attack_sets_contain_their_cell_and_nest() {
        let b = Board::new(5, 7).unwrap();
        for c in 0..b.cells() {
            let (r, q, k) = (
                Piece::Rook.attack(&b, c),
                Piece::Queen.attack(&b, c),
                Piece::King.attack(&b, c),
            );
            assert!(r >> c & 1 == 1 && k >> c & 1 == 1);
            assert_eq!(r & q, r);
            assert_eq!(k & q, k);
        }
        assert_eq!(Piece::King.attack(&b, 0).count_ones(), 4);
        assert_eq!(Piece::Rook.attack(&b, 0).count_ones(), 11);
    }

    #[test]
    fn board_parsing() {
        assert_eq!("2x3".parse::<Board>().unwrap(), Board { rows: 2, cols: 3 });
        assert!("2-3".parse::<Board>().is_err());
        assert!("0x3".parse::<Board>().is_err());
        assert!("12x12".parse::<Board>().is_err());
    }

    #[test]
    fn degenerate_labels_lose() {
        let pair = BoardPair::new(Board::new(2, 3).unwrap(), Board::new(4, 4).unwrap());
        let s = RookStrategyPair {
            r_placement: vec![0; 6],
            l_labels: vec![0; 16],
        };
        let a = verify_rook_strategy(&pair, &s).unwrap();
        let b = verify_board_by_enumeration(&pair, &s, Piece::Rook).unwrap();
        assert!(!a.winning && !b.winning);
    }

    #[test]
    fn label_check_matches_enumeration_on_random_strategies() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let l = Board::new(rng.gen_range(1..4), rng.gen_range(1..4)).unwrap();
            let r = Board::new(rng.gen_range(1..4), rng.gen_range(1..5)).unwrap();
            let pair = BoardPair::new(l, r);
            let s = RookStrategyPair {
                r_placement: (0..l.cells())
                    .map(|_| rng.gen_range(0..r.cells()))
                    .collect(),
                l_labels: (0..r.cells())
                    .map(|_| rng.gen_range(0..l.cells()))
                    .collect(),
            };
            for piece in [Piece::Rook, Piece::Queen, Piece::King] {
                let a = verify_board_strategy(&pair, &s, piece).unwrap();
                let b = verify_board_by_enumeration(&pair, &s, piece).unwrap();
                assert_eq!(a.winning, b.winning);
            }
        }
    }
}
