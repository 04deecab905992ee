//! Two cliques sharing one vertex ("bows").

use num::integer::lcm;

use crate::error::{HatsError, Result};
use crate::game::{Color, Game};
use crate::strategy::{Strategy, View};

/// Parameters of a generalized bow: the hatnesses of the two cliques without
/// the shared center, the center's hatness and the multiplier by which the
/// right clique relabels the center's colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BowSpec {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub center: u32,
    pub sigma: u32,
}

impl BowSpec {
    pub fn big() -> Self {
        BowSpec {
            left: vec![4, 5, 5, 5],
            right: vec![5, 5, 5, 4],
            center: 37,
            sigma: 6,
        }
    }

    pub fn medium() -> Self {
        BowSpec {
            left: vec![5, 5, 5],
            right: vec![5, 5, 5],
            center: 5,
            sigma: 2,
        }
    }

    fn center_index(&self) -> usize {
        self.left.len()
    }

    /// Vertices `L1.., A, R1..` in this order.
    pub fn game(&self) -> Result<Game> {
        let mut vs: Vec<(String, u32)> = Vec::new();
        for (i, &h) in self.left.iter().enumerate() {
            vs.push((format!("L{}", i + 1), h));
        }
        vs.push(("A".to_string(), self.center));
        for (i, &h) in self.right.iter().enumerate() {
            vs.push((format!("R{}", i + 1), h));
        }
        let c = self.center_index();
        let sides = [
            (0..=c).collect::<Vec<_>>(),
            std::iter::once(c).chain(c + 1..vs.len()).collect(),
        ];
        let mut edges = Vec::new();
        for side in &sides {
            for (k, &u) in side.iter().enumerate() {
                for &v in &side[k + 1..] {
                    edges.push((u, v));
                }
            }
        }
        Game::from_indices(&vs, &edges)
    }
}

/// One clique of the bow seen as residues modulo `n`.
struct Side {
    members: Vec<usize>,
    hats: Vec<u32>,
    n: u64,
    lo: Vec<u64>,
    residual: u64,
    center_step: u64,
    sigma: u64,
    center_h: u64,
}

impl Side {
    fn new(members: Vec<usize>, hats: Vec<u32>, center: u32, sigma: u32) -> Result<Self> {
        let n = hats
            .iter()
            .fold(center as u64, |acc, &h| lcm(acc, h as u64));
        let mut lo = Vec::with_capacity(hats.len());
        let mut acc = 1u64;
        for &h in &hats {
            lo.push(acc);
            acc += n / h as u64;
        }
        if acc > n + 1 {
            return Err(HatsError::Precondition(
                "the hypotheses of one clique overlap (reciprocal sum exceeds 1)".into(),
            ));
        }
        Ok(Side {
            members,
            hats,
            n,
            lo,
            residual: acc,
            center_step: n / center as u64,
            sigma: sigma as u64,
            center_h: center as u64,
        })
    }

    fn center_value(&self, t: Color) -> u64 {
        (self.sigma * t as u64 % self.center_h) * self.center_step
    }

    fn value(&self, k: usize, x: Color) -> u64 {
        x as u64 * (self.n / self.hats[k] as u64)
    }

    /// Sum of the side's non-central values, skipping member `skip`.
    fn partial(&self, view: &View, skip: Option<usize>) -> u64 {
        self.members
            .iter()
            .enumerate()
            .filter(|&(k, _)| Some(k) != skip)
            .fold(0, |s, (k, &u)| (s + self.value(k, view.color(u))) % self.n)
    }

    /// Guess of member `k` given the sum `t` of every other value.
    fn guess(&self, k: usize, t: u64) -> Color {
        let d = self.n / self.hats[k] as u64;
        let lo = self.lo[k];
        let s = lo + (t + self.n * d - lo) % d;
        (((s + self.n - t) % self.n) / d) as Color
    }

    /// Whether the total `s` falls to the center.
    fn in_residual(&self, s: u64) -> bool {
        let s = if s == 0 { self.n } else { s };
        s >= self.residual
    }
}

/// Strategy for a bow: each clique bets on an interval of the sum of its
/// residues; the center takes what is left over on both sides and says the
/// color consistent with both.
pub fn bow_strategy(spec: &BowSpec) -> Result<Strategy> {
    if spec.center == 0 || spec.left.is_empty() || spec.right.is_empty() {
        return Err(HatsError::Precondition(
            "both cliques need a vertex and a positive center".into(),
        ));
    }
    let game = spec.game()?;
    let c = spec.center_index();
    let left = Side::new((0..c).collect(), spec.left.clone(), spec.center, 1)?;
    let right = Side::new(
        (c + 1..game.len()).collect(),
        spec.right.clone(),
        spec.center,
        spec.sigma,
    )?;
    Strategy::tabulate(&game, |v, view| {
        if v == c {
            let (p, q) = (left.partial(view, None), right.partial(view, None));
            (0..spec.center)
                .find(|&t| {
                    left.in_residual((p + left.center_value(t)) % left.n)
                        && right.in_residual((q + right.center_value(t)) % right.n)
                })
                .unwrap_or(0)
        } else {
            let (side, k) = if v < c {
                (&left, v)
            } else {
                (&right, v - c - 1)
            };
            let t = (side.partial(view, Some(k)) + side.center_value(view.color(c))) % side.n;
            side.guess(k, t)
        }
    })
}
