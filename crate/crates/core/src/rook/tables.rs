//! Fixed strategies for the board games, kept as data files.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HatsError, Result};

use super::{solve_rook, Board, BoardPair, CellSet, Piece, RookStrategyPair};

#[derive(Deserialize)]
struct PairFile {
    left: String,
    right: String,
    r_placement: Vec<usize>,
    l_labels: Vec<usize>,
}

fn load_pair(text: &str) -> (BoardPair, RookStrategyPair) {
    let f: PairFile = serde_json::from_str(text).expect("strategy data is valid JSON");
    let pair = BoardPair::new(f.left.parse().unwrap(), f.right.parse().unwrap());
    let s = RookStrategyPair {
        r_placement: f.r_placement,
        l_labels: f.l_labels,
    };
    s.validate(&pair).expect("strategy data fits its boards");
    (pair, s)
}

/// `L(2x3)`, `R(3x4)`.
pub fn win4_strategy() -> RookStrategyPair {
    load_pair(include_str!("../../data/win4.json")).1
}

/// `L(2x4)`, `R(3x3)`.
pub fn win5_strategy() -> RookStrategyPair {
    load_pair(include_str!("../../data/win5.json")).1
}

/// The 3x3 arrow diagrams; the center answers the center.
pub fn win3_arrows() -> RookStrategyPair {
    load_pair(include_str!("../../data/win3_arrows.json")).1
}

/// `L(3x3)`, `R(3x3)`, as found by the search.
pub fn win3_strategy() -> RookStrategyPair {
    static S: OnceLock<RookStrategyPair> = OnceLock::new();
    S.get_or_init(|| {
        let b = Board { rows: 3, cols: 3 };
        solve_rook(&BoardPair::new(b, b), None)
            .ok()
            .and_then(|v| v.witness)
            .expect("3x3 against 3x3 is winning")
    })
    .clone()
}

/// Both players split their boards into two classes, each attacked from a
/// single queen square. The left player bets the kings are in the same
/// class, the right player that they are not.
fn two_class(board: Board, class: &[usize], queens: [usize; 2]) -> (BoardPair, RookStrategyPair) {
    let pair = BoardPair::new(board, board);
    let s = RookStrategyPair {
        r_placement: class.iter().map(|&k| queens[1 - k]).collect(),
        l_labels: class.iter().map(|&k| queens[k]).collect(),
    };
    (pair, s)
}

#[derive(Deserialize)]
struct ClassFile {
    board: String,
    class_one: Vec<(usize, usize)>,
    queens: [(usize, usize); 2],
}

/// Queen check on `4x5` against `4x5` with a two-class coloring.
pub fn queen_4x5_coloring() -> (BoardPair, RookStrategyPair) {
    let f: ClassFile = serde_json::from_str(include_str!("../../data/queen_4x5.json"))
        .expect("valid strategy data");
    let b: Board = f.board.parse().unwrap();
    let mut class = vec![0; b.cells()];
    for (r, c) in f.class_one {
        class[b.cell(r, c)] = 1;
    }
    two_class(b, &class, f.queens.map(|(r, c)| b.cell(r, c)))
}

/// The same game with chessboard colors; the squares `c2` and `c3` attack
/// one color each.
pub fn queen_4x5_chessboard() -> (BoardPair, RookStrategyPair) {
    let b = Board { rows: 4, cols: 5 };
    let class: Vec<usize> = (0..b.cells()).map(|i| (i / 5 + i % 5) % 2).collect();
    two_class(b, &class, [b.cell(2, 2), b.cell(1, 2)])
}

/// For each cell of the `4x4` board, the (1-based) left queen squares that
/// do not attack it.
pub const QUEEN_4X4_UNFAVORABLE: [&[usize]; 16] = [
    &[3],
    &[2, 4],
    &[4],
    &[1, 2],
    &[2],
    &[4],
    &[],
    &[4],
    &[3],
    &[],
    &[4],
    &[1, 4],
    &[1, 2],
    &[3],
    &[1],
    &[3],
];

#[derive(Deserialize)]
struct QueenRuleFile {
    left: String,
    right: String,
    queens: Vec<(usize, usize)>,
    labels: Vec<Vec<usize>>,
    rules: Vec<(Vec<usize>, (usize, usize))>,
}

/// Queen check on `L(4x4)`, `R(5x5)`. The left player uses four queen
/// squares, chosen by the label of the right king's cell. The right player
/// looks at which of these squares miss the left king and answers with the
/// first rule covering them.
pub fn queen_4x4_5x5() -> (BoardPair, RookStrategyPair) {
    let f: QueenRuleFile = serde_json::from_str(include_str!("../../data/queen_4x4_5x5.json"))
        .expect("valid strategy data");
    let (l, r): (Board, Board) = (f.left.parse().unwrap(), f.right.parse().unwrap());
    let queens: Vec<usize> = f.queens.iter().map(|&(a, b)| l.cell(a, b)).collect();
    let l_labels = f.labels.iter().flatten().map(|&k| queens[k - 1]).collect();
    let r_placement = (0..l.cells())
        .map(|i| {
            let missing = missing_queens(&l, &queens, i);
            let (_, (a, b)) = f
                .rules
                .iter()
                .find(|(set, _)| missing.iter().all(|k| set.contains(k)))
                .unwrap_or(&f.rules[0]);
            r.cell(*a, *b)
        })
        .collect();
    (
        BoardPair::new(l, r),
        RookStrategyPair {
            r_placement,
            l_labels,
        },
    )
}

/// 1-based indices of the queen squares that do not attack `cell`.
pub fn missing_queens(board: &Board, queens: &[usize], cell: usize) -> Vec<usize> {
    (0..queens.len())
        .filter(|&k| Piece::Queen.attack(board, queens[k]) >> cell & 1 == 0)
        .map(|k| k + 1)
        .collect()
}

/// Outcome of the checks on the five-player queen game on 11x11 boards.
#[derive(Clone, Debug, Serialize)]
pub struct FiveQueensReport {
    /// Queen squares as `(row, col)`.
    pub queens: Vec<(usize, usize)>,
    /// Index of the first queen attacking each cell.
    pub weights: Vec<u8>,
    pub dominated: usize,
    pub labeling_valid: bool,
    pub exhaustive_checked: u64,
    pub random_checked: u64,
    pub failures: u64,
}

const FIVE_QUEENS: [(usize, usize); 5] = [(7, 1), (1, 3), (5, 5), (9, 7), (3, 9)];

/// The five players win if some player attacks its own king: player `k`
/// bets the weights of all five kings sum to `k` modulo 5 and puts its queen
/// on the square of the weight that would make this true.
fn five_players_win(attack: &[CellSet; 5], weights: &[u8], kings: &[usize; 5]) -> bool {
    let total: usize = kings.iter().map(|&c| weights[c] as usize).sum();
    (0..5).any(|k| {
        let others = total - weights[kings[k]] as usize;
        let j = (k + 5 * 5 - others % 5) % 5;
        attack[j] >> kings[k] & 1 == 1
    })
}

/// Checks the five-queen domination of the 11x11 board, the weight labeling,
/// the first `slice` king placements in order and `samples` random ones.
pub fn queen_5player_11x11(slice: u64, samples: u64, seed: u64) -> Result<FiveQueensReport> {
    let b = Board { rows: 11, cols: 11 };
    let attack: [CellSet; 5] = FIVE_QUEENS.map(|(r, c)| Piece::Queen.attack(&b, b.cell(r, c)));
    let covered = attack.iter().fold(0, |u, &a| u | a);
    let dominated = covered.count_ones() as usize;
    if covered != b.all() {
        return Err(HatsError::Internal(format!(
            "five queens cover only {dominated} cells"
        )));
    }
    let weights: Vec<u8> = (0..b.cells())
        .map(|c| (0..5).find(|&k| attack[k] >> c & 1 == 1).unwrap() as u8)
        .collect();
    let labeling_valid = (0..b.cells()).all(|c| attack[weights[c] as usize] >> c & 1 == 1);
    let mut failures = 0;
    let mut kings = [0usize; 5];
    let mut exhaustive_checked = 0;
    while exhaustive_checked < slice {
        failures += !five_players_win(&attack, &weights, &kings) as u64;
        exhaustive_checked += 1;
        let mut k = 4;
        loop {
            kings[k] += 1;
            if kings[k] < b.cells() {
                break;
            }
            kings[k] = 0;
            if k == 0 {
                break;
            }
            k -= 1;
        }
        if kings == [0; 5] {
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let kings: [usize; 5] = std::array::from_fn(|_| rng.gen_range(0..b.cells()));
        failures += !five_players_win(&attack, &weights, &kings) as u64;
    }
    Ok(FiveQueensReport {
        queens: FIVE_QUEENS.to_vec(),
        weights,
        dominated,
        labeling_valid,
        exhaustive_checked,
        random_checked: samples,
        failures,
    })
}
