//! Complete graphs, and complete graphs with one edge removed.

use num::bigint::BigUint;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{HatsError, Result};
use crate::game::{Arrangements, Color, Game};
use crate::strategy::{view_index, Strategy};
use crate::verdict::Verdict;

use super::matching::{hopcroft_karp, Bipartite};

/// Vertex names used for the sages of a clique: `A1`, `A2`, ...
pub fn sage_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("A{i}")).collect()
}

pub fn clique_game(hats: &[u32]) -> Result<Game> {
    let names = sage_names(hats.len());
    let vs: Vec<(&str, u32)> = names
        .iter()
        .map(String::as_str)
        .zip(hats.iter().copied())
        .collect();
    Game::clique(&vs)
}

/// Exact `sum 1/a_i`.
pub fn reciprocal_sum(hats: &[u32]) -> BigRational {
    hats.iter().fold(BigRational::zero(), |acc, &a| {
        acc + BigRational::new(BigInt::one(), BigInt::from(a))
    })
}

fn one() -> BigRational {
    BigRational::one()
}

/// Winning iff `sum 1/a_i >= 1`; the witness is the arithmetic strategy when
/// the least common multiple fits in 64 bits.
pub fn clique_classify(hats: &[u32]) -> Result<Verdict> {
    if hats.is_empty() || hats.contains(&0) {
        return Err(HatsError::Precondition("hatnesses must be positive".into()));
    }
    if reciprocal_sum(hats) < one() {
        return Ok(Verdict::losing("clique-sum<1"));
    }
    let witness = arithmetic_clique_strategy(hats).ok();
    Ok(Verdict::winning(witness, "clique-sum>=1"))
}

fn lcm_u64(hats: &[u32]) -> Result<u64> {
    hats.iter().try_fold(1u64, |acc, &a| {
        let l = acc / acc.gcd(&(a as u64));
        l.checked_mul(a as u64)
            .ok_or_else(|| HatsError::Overflow("least common multiple".into()))
    })
}

/// Strategy by residues: with `N = lcm` and `d_k = N / a_k`, color `x` of
/// sage `k` stands for `(x + 1) d_k mod N`, and sage `k` bets that the total
/// lies in the `k`-th block of `d_k` consecutive integers starting at 1.
pub fn arithmetic_clique_strategy(hats: &[u32]) -> Result<Strategy> {
    if reciprocal_sum(hats) < one() {
        return Err(HatsError::Precondition(
            "sum of reciprocals is below 1".into(),
        ));
    }
    let game = clique_game(hats)?;
    let n = lcm_u64(hats)? as u128;
    let d: Vec<u128> = hats.iter().map(|&a| n / a as u128).collect();
    let mut lo = Vec::with_capacity(hats.len());
    let mut acc = 1u128;
    for &dk in &d {
        lo.push(acc);
        acc += dk;
    }
    let value = |k: usize, c: Color| ((c as u128 + 1) * d[k]) % n;
    Strategy::tabulate(&game, |k, view| {
        let t = view
            .neighbors()
            .iter()
            .fold(0u128, |s, &u| (s + value(u, view.color(u))) % n);
        let dk = d[k];
        // the one total in the block congruent to t modulo d_k
        let s = lo[k] + ((t + dk * n - lo[k] % dk) % dk);
        let y = (s + n - t) % n;
        let a = hats[k] as u128;
        ((y / dk + a - 1) % a) as Color
    })
}

/// The textbook strategy for `n` sages with `n` colors: sage `i` (from 0)
/// bets that the sum of all colors is `i + 1` modulo `n`.
pub fn classical_strategy(n: u32) -> Result<Strategy> {
    let game = clique_game(&vec![n; n as usize])?;
    Strategy::tabulate(&game, |i, view| {
        let others: u64 = view.neighbors().iter().map(|&u| view.color(u) as u64).sum();
        ((i as u64 + 1 + n as u64 * n as u64 - others % n as u64) % n as u64) as Color
    })
}

/// Strategy from a matching between arrangements and the sets
/// `{colors with sage i's view fixed}`: sage `i` names the color of the
/// arrangement matched to its view.
pub fn hall_clique_strategy(hats: &[u32], bound: u64) -> Result<Strategy> {
    if reciprocal_sum(hats) < one() {
        return Err(HatsError::Precondition(
            "sum of reciprocals is below 1".into(),
        ));
    }
    let game = clique_game(hats)?;
    let total = game.enumerable_count()?;
    if total > bound {
        return Err(HatsError::TooLarge(format!(
            "{total} arrangements exceed the bound {bound}"
        )));
    }
    let n = game.len();
    let mut base = Vec::with_capacity(n);
    let mut girls = 0usize;
    for v in 0..n {
        base.push(girls);
        girls += game.view_count(v)?;
    }
    let mut offsets = Vec::with_capacity(total as usize + 1);
    let mut targets = Vec::with_capacity(total as usize * n);
    offsets.push(0);
    for arr in Arrangements::new(&game)? {
        for v in 0..n {
            targets.push((base[v] + view_index(&game, v, arr.colors())) as u32);
        }
        offsets.push(targets.len());
    }
    let m = hopcroft_karp(&Bipartite {
        offsets,
        targets,
        n_right: girls,
    });
    let mut tables: Vec<Vec<Color>> = (0..n)
        .map(|v| Ok(vec![0; game.view_count(v)?]))
        .collect::<Result<_>>()?;
    let radices = game.hatnesses().to_vec();
    for (boy, girl) in m.iter().enumerate() {
        let girl = girl.ok_or_else(|| {
            HatsError::Internal(format!(
                "arrangement {boy} is unmatched although the sum is at least 1"
            ))
        })?;
        let v = base
            .iter()
            .rposition(|&b| b <= girl)
            .expect("girl belongs to a sage");
        let colors = crate::game::unrank(&radices, boy as u64);
        tables[v][girl - base[v]] = colors[v];
    }
    Strategy::new(&game, tables)
}

/// Hatnesses `a_1..a_n` on the complete graph minus the edge `A_{n-1} A_n`.
pub fn almost_clique_game(hats: &[u32]) -> Result<Game> {
    let n = hats.len();
    let names = sage_names(n);
    let vs: Vec<(&str, u32)> = names
        .iter()
        .map(String::as_str)
        .zip(hats.iter().copied())
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !(i == n - 2 && j == n - 1) {
                edges.push((names[i].as_str(), names[j].as_str()));
            }
        }
    }
    Game::new(&vs, &edges)
}

/// Classifies the complete graph minus one edge (the last two vertices are
/// the non-adjacent pair).
pub fn almost_clique_classify(hats: &[u32]) -> Result<Verdict> {
    let n = hats.len();
    if n < 3 || hats.contains(&0) {
        return Err(HatsError::Precondition(
            "need at least 3 positive hatnesses".into(),
        ));
    }
    let (p, q) = (hats[n - 2], hats[n - 1]);
    let s =
        reciprocal_sum(hats) - BigRational::new(BigInt::one(), BigInt::from(p as u64 * q as u64));
    if s < one() {
        return Ok(Verdict::losing("almost-ineq"));
    }
    if s > one() {
        return Ok(Verdict::unknown("almost-strict"));
    }
    let alpha: BigUint = hats[..n - 2].iter().map(|&a| BigUint::from(a)).product();
    if !(alpha % BigUint::from(p as u64 * q as u64)).is_zero() {
        return Ok(Verdict::losing("divisibility"));
    }
    let front = &hats[..n - 2];
    if n >= 4 && front.contains(&2) {
        return Ok(Verdict::losing("lemma-2.5(1)"));
    }
    if n >= 4 && front.contains(&3) && (p == 2 || q == 2) {
        return Ok(Verdict::losing("lemma-2.5(2)"));
    }
    if n == 4 && front == [6, 6] && matches!((p, q), (2, 3) | (3, 2)) {
        return Ok(Verdict::winning(Some(lemma_6623_strategy(p)?), "6623"));
    }
    Ok(Verdict::unknown("almost-equality"))
}

/// Winning strategy on `K4` minus `CD` with hatnesses `A=6, B=6, C=2, D=3`
/// (vertices named `A1..A4`; `last_two_first` is the hatness of `A3`, 2 or 3).
pub fn lemma_6623_strategy(last_two_first: u32) -> Result<Strategy> {
    let (hc, hd) = if last_two_first == 2 { (2, 3) } else { (3, 2) };
    let game = almost_clique_game(&[6, 6, hc, hd])?;
    let (c, d) = if hc == 2 { (2, 3) } else { (3, 2) };
    // residue t of a + b modulo 6 from its residues modulo 2 and 3
    let crt = |r2: u32, r3: u32| (0..6).find(|t| t % 2 == r2 % 2 && t % 3 == r3 % 3).unwrap();
    Strategy::tabulate(&game, |v, view| match v {
        0 => {
            let t = crt(view.color(c) + 1, view.color(d) + 1);
            (t + 6 - view.color(1)) % 6
        }
        1 => {
            let t = crt(view.color(c) + 1, view.color(d) + 2);
            (t + 6 - view.color(0)) % 6
        }
        _ if v == c => (view.color(0) + view.color(1)) % 2,
        _ => (view.color(0) + view.color(1)) % 3,
    })
}

/// Largest hatness a sage can have in a simple winning clique of `n` sages:
/// `s_n - 1` for Sylvester's sequence `s_1 = 2`, `s_{k+1} = s_k (s_k - 1) + 1`.
pub fn sylvester_max_hatness(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(HatsError::Precondition("need at least one sage".into()));
    }
    let mut s = BigUint::from(2u32);
    for _ in 1..n {
        s = &s * (&s - 1u32) + 1u32;
    }
    Ok(s - 1u32)
}
