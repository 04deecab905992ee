//! King check. A king attacks the cells at Chebyshev distance at most 1,
//! its own cell included.

use super::{Board, BoardPair, BoardVerdict, RookStrategyPair};

/// Largest number of cells no single king attacks two of.
pub fn king_ell(board: &Board) -> usize {
    board.rows.div_ceil(3) * board.cols.div_ceil(3)
}

/// The same number by exhaustive search over cell sets with pairwise
/// Chebyshev distance at least 3.
pub fn king_ell_brute_force(board: &Board) -> usize {
    let cells: Vec<(usize, usize)> = (0..board.cells()).map(|c| board.coords(c)).collect();
    let far = |a: (usize, usize), b: (usize, usize)| a.0.abs_diff(b.0).max(a.1.abs_diff(b.1)) >= 3;
    fn grow(
        cells: &[(usize, usize)],
        far: &dyn Fn((usize, usize), (usize, usize)) -> bool,
        from: usize,
        chosen: &mut Vec<(usize, usize)>,
        best: &mut usize,
    ) {
        *best = (*best).max(chosen.len());
        if chosen.len() + cells.len() - from <= *best {
            return;
        }
        for i in from..cells.len() {
            if chosen.iter().all(|&c| far(c, cells[i])) {
                chosen.push(cells[i]);
                grow(cells, far, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(&cells, &far, 0, &mut Vec::new(), &mut best);
    best
}

fn center(board: &Board) -> usize {
    board.cell((board.rows - 1) / 2, (board.cols - 1) / 2)
}

/// Two kings cover a board with `king_ell == 2`: it is cut into two blocks
/// of at most three lines along its long side.
fn halves(board: &Board) -> (Vec<usize>, [usize; 2]) {
    let long_rows = board.rows > board.cols;
    let long = board.rows.max(board.cols);
    let mid = (board.rows.min(board.cols) - 1) / 2;
    let at = |along: usize| {
        if long_rows {
            board.cell(along, mid)
        } else {
            board.cell(mid, along)
        }
    };
    let half = (0..board.cells())
        .map(|c| {
            let (r, col) = board.coords(c);
            (if long_rows { r } else { col } >= 3) as usize
        })
        .collect();
    (half, [at(1), at(4.min(long - 1))])
}

/// Both boards have `king_ell == 2`. The left player bets the kings sit in
/// the same half, the right player that they do not.
pub fn king_split_strategy(pair: &BoardPair) -> Option<RookStrategyPair> {
    if king_ell(&pair.left) != 2 || king_ell(&pair.right) != 2 {
        return None;
    }
    let (lh, lc) = halves(&pair.left);
    let (rh, rc) = halves(&pair.right);
    Some(RookStrategyPair {
        r_placement: lh.iter().map(|&h| rc[1 - h]).collect(),
        l_labels: rh.iter().map(|&h| lc[h]).collect(),
    })
}

/// The players win iff both boards need two kings or one board needs one.
pub fn king_check_classify(pair: &BoardPair) -> BoardVerdict {
    let (l, r) = (king_ell(&pair.left), king_ell(&pair.right));
    if l == 1 {
        let w = RookStrategyPair {
            r_placement: vec![0; pair.left.cells()],
            l_labels: vec![center(&pair.left); pair.right.cells()],
        };
        return BoardVerdict::winning(w, "one king covers the left board");
    }
    if r == 1 {
        let w = RookStrategyPair {
            r_placement: vec![center(&pair.right); pair.left.cells()],
            l_labels: vec![0; pair.right.cells()],
        };
        return BoardVerdict::winning(w, "one king covers the right board");
    }
    if let Some(w) = king_split_strategy(pair) {
        return BoardVerdict::winning(w, "split halves");
    }
    BoardVerdict::losing(format!("king numbers {l} and {r}"))
}
