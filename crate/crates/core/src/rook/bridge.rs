use crate::error::{HatsError, Result};
use crate::game::{Color, Game};
use crate::strategy::Strategy;

use super::{Board, BoardPair, RookStrategyPair};

/// Correspondence between a game on the 4-cycle `A B C D` and rook check on
/// `L(h(A) x h(C))`, `R(h(B) x h(D))`. A king on `L` at `(a, c)` stands for
/// the colors of `A` and `C`; a rook on `R` at `(b, d)` for the guesses of
/// `B` and `D`.
#[derive(Clone, Debug)]
pub struct BoardBridge {
    pub pair: BoardPair,
    pub game: Game,
    /// Vertex indices of `A`, `B`, `C`, `D`.
    pub corners: [usize; 4],
}

impl BoardBridge {
    /// `A` is vertex 0, `B` its neighbor with the smaller index.
    pub fn new(game: &Game) -> Result<Self> {
        if game.len() != 4 || (0..4).any(|v| game.degree(v) != 2) {
            return Err(HatsError::Precondition(
                "the game is not played on a 4-cycle".into(),
            ));
        }
        let a = 0;
        let (b, d) = (game.neighbors(a)[0], game.neighbors(a)[1]);
        let c = (1..4).find(|&v| v != b && v != d).unwrap();
        if !game.has_edge(b, c) || !game.has_edge(c, d) {
            return Err(HatsError::Precondition(
                "the game is not played on a 4-cycle".into(),
            ));
        }
        let h = |v: usize| game.hatness(v) as usize;
        let pair = BoardPair::new(Board::new(h(a), h(c))?, Board::new(h(b), h(d))?);
        Ok(BoardBridge {
            pair,
            game: game.clone(),
            corners: [a, b, c, d],
        })
    }

    pub fn to_strategy(&self, s: &RookStrategyPair) -> Result<Strategy> {
        let game = &self.game;
        s.validate(&self.pair)?;
        let [a, b, c, d] = self.corners;
        let (l, r) = (self.pair.left, self.pair.right);
        Strategy::tabulate(game, |v, view| {
            if v == a || v == c {
                let q = r.cell(view.color(b) as usize, view.color(d) as usize);
                let (row, col) = l.coords(s.l_labels[q]);
                (if v == a { row } else { col }) as Color
            } else {
                let i = l.cell(view.color(a) as usize, view.color(c) as usize);
                let (row, col) = r.coords(s.r_placement[i]);
                (if v == b { row } else { col }) as Color
            }
        })
    }

    pub fn from_strategy(&self, s: &Strategy) -> Result<RookStrategyPair> {
        let game = &self.game;
        s.validate(game)?;
        let [a, b, c, d] = self.corners;
        let (l, r) = (self.pair.left, self.pair.right);
        let mut colors = vec![0 as Color; 4];
        let mut r_placement = Vec::with_capacity(l.cells());
        for i in 0..l.cells() {
            let (x, y) = l.coords(i);
            colors[a] = x as Color;
            colors[c] = y as Color;
            r_placement.push(r.cell(s.guess(b, &colors) as usize, s.guess(d, &colors) as usize));
        }
        let mut l_labels = Vec::with_capacity(r.cells());
        for q in 0..r.cells() {
            let (x, y) = r.coords(q);
            colors[b] = x as Color;
            colors[d] = y as Color;
            l_labels.push(l.cell(s.guess(a, &colors) as usize, s.guess(c, &colors) as usize));
        }
        Ok(RookStrategyPair {
            r_placement,
            l_labels,
        })
    }
}
