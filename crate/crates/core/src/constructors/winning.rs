use crate::error::{HatsError, Result};
use crate::game::{Color, Game, Provenance};
use crate::strategy::Strategy;
use crate::verify::Scanner;

use super::{checked_add, checked_mul, ensure_disjoint, fold, Assembly, ConstructedGame};

fn unwrap_map(map: &[Option<usize>]) -> Vec<usize> {
    map.iter().map(|m| m.expect("mapped")).collect()
}

fn inverse(map: &[Option<usize>], len: usize) -> Vec<Option<usize>> {
    let mut inv = vec![None; len];
    for (x, m) in map.iter().enumerate() {
        if let Some(v) = m {
            inv[*v] = Some(x);
        }
    }
    inv
}

/// Glues two winning games at the common vertex `at`, whose hatness becomes
/// the product. Its color is the pair `(c1, c2)` stored as `c1 + h1 * c2`.
pub fn product(g1: &ConstructedGame, g2: &ConstructedGame, at: &str) -> Result<ConstructedGame> {
    let (f1, f2) = (g1.witness()?, g2.witness()?);
    let (a, b) = (&g1.game, &g2.game);
    let (a1, a2) = (a.index_of(at)?, b.index_of(at)?);
    ensure_disjoint(a, b, &[at])?;
    let h1 = a.hatness(a1);
    let mut asm = Assembly::default();
    let mut map1 = vec![None; a.len()];
    for x in 0..a.len() {
        let h = if x == a1 {
            checked_mul(h1, b.hatness(a2))?
        } else {
            a.hatness(x)
        };
        map1[x] = Some(asm.add(a.name(x), h));
    }
    let mut map2 = vec![None; b.len()];
    for y in 0..b.len() {
        map2[y] = Some(if y == a2 {
            a1
        } else {
            asm.add(b.name(y), b.hatness(y))
        });
    }
    asm.edges_of(a, &map1);
    asm.edges_of(b, &map2);
    let game = asm.build()?;
    let inv2 = inverse(&map2, game.len());
    let (m1, m2) = (unwrap_map(&map1), unwrap_map(&map2));
    let s = Strategy::tabulate(&game, |v, view| {
        if v == a1 {
            let c1 = f1.rule_of(a1).guess(|x| view.color(m1[x]));
            let c2 = f2.rule_of(a2).guess(|y| view.color(m2[y]));
            c1 + h1 * c2
        } else if v < a.len() {
            f1.rule_of(v).guess(|x| {
                let c = view.color(m1[x]);
                if x == a1 {
                    c % h1
                } else {
                    c
                }
            })
        } else {
            let y = inv2[v].expect("second operand vertex");
            f2.rule_of(y).guess(|z| {
                let c = view.color(m2[z]);
                if z == a2 {
                    c / h1
                } else {
                    c
                }
            })
        }
    })?;
    let p = Provenance::node(
        "product",
        &[at],
        vec![g1.provenance.clone(), g2.provenance.clone()],
    );
    ConstructedGame::winning(game, s, p)
}

/// Replaces vertex `v` of `g1` by the whole of `g2`; every vertex of `g2`
/// is joined to the former neighbors of `v` and its hatness is multiplied
/// by `h1(v)`.
pub fn substitute(g1: &ConstructedGame, v: &str, g2: &ConstructedGame) -> Result<ConstructedGame> {
    let (f1, f2) = (g1.witness()?, g2.witness()?);
    let (a, b) = (&g1.game, &g2.game);
    let vi = a.index_of(v)?;
    ensure_disjoint(a, b, &[])?;
    let hv = a.hatness(vi);
    let mut asm = Assembly::default();
    let mut map1 = vec![None; a.len()];
    let mut map2 = vec![None; b.len()];
    for x in 0..a.len() {
        if x == vi {
            for y in 0..b.len() {
                map2[y] = Some(asm.add(b.name(y), checked_mul(b.hatness(y), hv)?));
            }
        } else {
            map1[x] = Some(asm.add(a.name(x), a.hatness(x)));
        }
    }
    asm.edges_of(a, &map1);
    asm.edges_of(b, &map2);
    for &w in a.neighbors(vi) {
        for &m in map2.iter().flatten() {
            asm.edge(map1[w].unwrap(), m);
        }
    }
    let game = asm.build()?;
    let (inv1, inv2) = (inverse(&map1, game.len()), inverse(&map2, game.len()));
    let m2 = unwrap_map(&map2);
    let to1 = |x: usize| map1[x].expect("not the substituted vertex");
    let s = Strategy::tabulate(&game, |u, view| {
        if let Some(y) = inv2[u] {
            let c1 = f1.rule_of(vi).guess(|x| view.color(to1(x)));
            let c2 = f2.rule_of(y).guess(|z| view.color(m2[z]) / hv);
            c1 + hv * c2
        } else {
            let x = inv1[u].expect("first operand vertex");
            if a.has_edge(x, vi) {
                // the first copy of g2 that guesses its second coordinate
                // right tells the color of v through its first coordinate
                let vcol = (0..b.len())
                    .find(|&y| {
                        let guess = f2.rule_of(y).guess(|z| view.color(m2[z]) / hv);
                        guess == view.color(m2[y]) / hv
                    })
                    .map(|y| view.color(m2[y]) % hv)
                    .unwrap_or(0);
                f1.rule_of(x)
                    .guess(|w| if w == vi { vcol } else { view.color(to1(w)) })
            } else {
                f1.rule_of(x).guess(|w| view.color(to1(w)))
            }
        }
    })?;
    let p = Provenance::node(
        "substitute",
        &[v],
        vec![g1.provenance.clone(), g2.provenance.clone()],
    );
    ConstructedGame::winning(game, s, p)
}

/// Adds a vertex of hatness 2 joined to `b` and `c`, each of which gains one
/// new color (index `h(b)` resp. `h(c)`).
pub fn attach_vertex2(
    g: &ConstructedGame,
    b: &str,
    c: &str,
    name: &str,
) -> Result<ConstructedGame> {
    let f = g.witness()?;
    let old = &g.game;
    let (bi, ci) = (old.index_of(b)?, old.index_of(c)?);
    if bi == ci {
        return Err(HatsError::Precondition(
            "the two attachment vertices must differ".into(),
        ));
    }
    let mut asm = Assembly::default();
    for x in 0..old.len() {
        let h = if x == bi || x == ci {
            checked_add(old.hatness(x), 1)?
        } else {
            old.hatness(x)
        };
        asm.add(old.name(x), h);
    }
    let ai = asm.add(name, 2);
    let ident: Vec<_> = (0..old.len()).map(Some).collect();
    asm.edges_of(old, &ident);
    asm.edge(ai, bi);
    asm.edge(ai, ci);
    let game = asm.build()?;
    let oh = old.hatnesses();
    let s = Strategy::tabulate(&game, |v, view| {
        let play_old = || f.rule_of(v).guess(|u| fold(view.color(u), oh[u]));
        if v == ai {
            (view.color(bi) == oh[bi] || view.color(ci) == oh[ci]) as Color
        } else if (v == bi || v == ci) && view.color(ai) == 0 {
            oh[v]
        } else {
            play_old()
        }
    })?;
    let p = Provenance::node("attach-vertex2", &[b, c], vec![g.provenance.clone()]);
    ConstructedGame::winning(game, s, p)
}

/// Adds a vertex of hatness 2 joined to both ends of the edge `bc`; their
/// hatnesses double. Their colors are pairs `(c, e)` stored as `c + h * e`.
pub fn attach_vertex2_to_edge(
    g: &ConstructedGame,
    b: &str,
    c: &str,
    name: &str,
) -> Result<ConstructedGame> {
    let f = g.witness()?;
    let old = &g.game;
    let (bi, ci) = (old.index_of(b)?, old.index_of(c)?);
    if !old.has_edge(bi, ci) {
        return Err(HatsError::Precondition(format!(
            "`{b}` and `{c}` are not adjacent"
        )));
    }
    let mut asm = Assembly::default();
    for x in 0..old.len() {
        let h = if x == bi || x == ci {
            checked_mul(old.hatness(x), 2)?
        } else {
            old.hatness(x)
        };
        asm.add(old.name(x), h);
    }
    let ai = asm.add(name, 2);
    let ident: Vec<_> = (0..old.len()).map(Some).collect();
    asm.edges_of(old, &ident);
    asm.edge(ai, bi);
    asm.edge(ai, ci);
    let game = asm.build()?;
    let oh = old.hatnesses();
    let s = Strategy::tabulate(&game, |v, view| {
        let low = |u: usize| {
            if u == bi || u == ci {
                view.color(u) % oh[u]
            } else {
                view.color(u)
            }
        };
        if v == ai {
            (view.color(bi) / oh[bi] + view.color(ci) / oh[ci]) % 2
        } else if v == bi || v == ci {
            let other = if v == bi { ci } else { bi };
            let first = f.rule_of(v).guess(low);
            // the bit that makes the new vertex wrong
            let eps = (view.color(ai) + view.color(other) / oh[other] + 1) % 2;
            first + oh[v] * eps
        } else {
            f.rule_of(v).guess(low)
        }
    })?;
    let p = Provenance::node(
        "attach-vertex2-to-edge",
        &[b, c],
        vec![g.provenance.clone()],
    );
    ConstructedGame::winning(game, s, p)
}

/// Adds the path `z - a - b - c` with new vertices `a` (hatness 2) and `b`
/// (hatness 3). `z` doubles its hatness with colors `(e, c)` stored as
/// `e + 2 * c`; `c` gains one new color.
pub fn attach_path_zabc(
    g: &ConstructedGame,
    z: &str,
    c: &str,
    names: (&str, &str),
) -> Result<ConstructedGame> {
    let f = g.witness()?;
    let old = &g.game;
    let (zi, ci) = (old.index_of(z)?, old.index_of(c)?);
    if zi == ci {
        return Err(HatsError::Precondition("the path ends must differ".into()));
    }
    let mut asm = Assembly::default();
    for x in 0..old.len() {
        let h = if x == zi {
            checked_mul(old.hatness(x), 2)?
        } else if x == ci {
            checked_add(old.hatness(x), 1)?
        } else {
            old.hatness(x)
        };
        asm.add(old.name(x), h);
    }
    let ai = asm.add(names.0, 2);
    let bi = asm.add(names.1, 3);
    let ident: Vec<_> = (0..old.len()).map(Some).collect();
    asm.edges_of(old, &ident);
    asm.edge(zi, ai);
    asm.edge(ai, bi);
    asm.edge(bi, ci);
    let game = asm.build()?;
    let hc = old.hatness(ci);
    let s = Strategy::tabulate(&game, |v, view| {
        let dec = |u: usize| {
            let col = view.color(u);
            if u == zi {
                col / 2
            } else if u == ci {
                fold(col, hc)
            } else {
                col
            }
        };
        if v == ai {
            let cb = view.color(bi);
            if cb != 2 {
                cb
            } else {
                view.color(zi) % 2
            }
        } else if v == bi {
            if view.color(ci) == hc {
                2
            } else {
                1 - view.color(ai)
            }
        } else if v == ci {
            if view.color(bi) != 2 {
                hc
            } else {
                f.rule_of(v).guess(dec)
            }
        } else if v == zi {
            (1 - view.color(ai)) + 2 * f.rule_of(v).guess(dec)
        } else {
            f.rule_of(v).guess(dec)
        }
    })?;
    let p = Provenance::node("attach-path-zabc", &[z, c], vec![g.provenance.clone()]);
    ConstructedGame::winning(game, s, p)
}

/// Adds a leaf of hatness `k >= 3` to `b`. The leaf guesses 0 and nobody
/// looks at it.
pub fn attach_leaf(g: &ConstructedGame, b: &str, k: u32, name: &str) -> Result<ConstructedGame> {
    let f = g.witness()?;
    if k < 3 {
        return Err(HatsError::Precondition(
            "leaf hatness must be at least 3".into(),
        ));
    }
    let old = &g.game;
    let bi = old.index_of(b)?;
    let mut asm = Assembly::default();
    for (n, h) in old.vertex_list() {
        asm.add(&n, h);
    }
    let li = asm.add(name, k);
    let ident: Vec<_> = (0..old.len()).map(Some).collect();
    asm.edges_of(old, &ident);
    asm.edge(bi, li);
    let game = asm.build()?;
    let s = Strategy::tabulate(&game, |v, view| {
        if v == li {
            0
        } else {
            f.rule_of(v).guess(|u| view.color(u))
        }
    })?;
    let p = Provenance::node("attach-leaf", &[b], vec![g.provenance.clone()]);
    ConstructedGame::winning(game, s, p)
}

struct LeafSplit {
    reduced: Game,
    /// reduced index -> index in the game with the leaf
    up: Vec<usize>,
    leaf: usize,
    base: usize,
}

fn split_leaf(game: &Game, leaf: &str) -> Result<LeafSplit> {
    let li = game.index_of(leaf)?;
    if game.degree(li) != 1 || game.hatness(li) < 3 {
        return Err(HatsError::Precondition(format!(
            "`{leaf}` must be a leaf of hatness at least 3"
        )));
    }
    let base = game.neighbors(li)[0];
    let keep: Vec<&str> = game
        .names()
        .iter()
        .map(String::as_str)
        .filter(|n| *n != leaf)
        .collect();
    let reduced = game.subgame(&keep)?;
    let up = (0..reduced.len())
        .map(|x| game.index_of(reduced.name(x)))
        .collect::<Result<_>>()?;
    Ok(LeafSplit {
        reduced,
        up,
        leaf: li,
        base,
    })
}

/// Strategy on the game without the leaf in which the leaf's neighbor has
/// been told its color is one of `b1`, `b2`: it imagines the leaf wearing a
/// color the leaf would never guess in either case.
pub fn hint_strategy(g: &ConstructedGame, leaf: &str, b1: Color, b2: Color) -> Result<Strategy> {
    let f = g.witness()?;
    let sp = split_leaf(&g.game, leaf)?;
    let h_leaf = g.game.hatness(sp.leaf);
    let avoid = [
        f.rule_of(sp.leaf).guess(|_| b1),
        f.rule_of(sp.leaf).guess(|_| b2),
    ];
    let a = (0..h_leaf)
        .find(|x| !avoid.contains(x))
        .expect("hatness at least 3");
    let down = |v: usize| sp.up.iter().position(|&w| w == v).expect("kept vertex");
    Strategy::tabulate(&sp.reduced, |x, view| {
        f.rule_of(sp.up[x])
            .guess(|w| if w == sp.leaf { a } else { view.color(down(w)) })
    })
}

/// Removes a leaf of hatness at least 3, keeping the game winning. Everybody
/// except the leaf's neighbor keeps its strategy; the neighbor's table is
/// forced on exactly the arrangements where nobody else guesses right.
pub fn remove_leaf(g: &ConstructedGame, leaf: &str) -> Result<ConstructedGame> {
    let f = g.witness()?;
    let sp = split_leaf(&g.game, leaf)?;
    let game = sp.reduced.clone();
    let down = |v: usize| sp.up.iter().position(|&w| w == v).expect("kept vertex");
    let base = down(sp.base);
    let partial = Strategy::tabulate(&game, |x, view| {
        if x == base {
            0
        } else {
            f.rule_of(sp.up[x]).guess(|w| view.color(down(w)))
        }
    })?;
    let sc = Scanner::new(&game, &partial)?;
    let mut forced: Vec<Option<Color>> = vec![None; game.view_count(base)?];
    let mut conflict = None;
    sc.scan(0, sc.total, |colors, views| {
        let others = (0..game.len()).any(|x| x != base && sc.correct(x, colors, views));
        if !others {
            match forced[views[base]] {
                Some(c) if c != colors[base] => {
                    conflict = Some(colors.to_vec());
                    return false;
                }
                _ => forced[views[base]] = Some(colors[base]),
            }
        }
        true
    });
    if let Some(c) = conflict {
        return Err(HatsError::Internal(format!(
            "leaf removal found contradictory requirements at {c:?}"
        )));
    }
    let mut tables: Vec<Vec<Color>> = partial.rules().iter().map(|r| r.table().to_vec()).collect();
    tables[base] = forced.into_iter().map(|c| c.unwrap_or(0)).collect();
    let s = Strategy::new(&game, tables)?;
    let p = Provenance::node("remove-leaf", &[leaf], vec![g.provenance.clone()]);
    ConstructedGame::winning(game, s, p)
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::Check;
    use super::*;
    use crate::game::{Arrangements, Game};
    use crate::verify::{verify_strategy, winners};

    fn path_2442(names: &[&str]) -> ConstructedGame {
        let mut g = p2(names[0], names[1]);
        for w in names[1..].windows(2) {
            g = product(&g, &p2(w[0], w[1]), w[0]).unwrap();
        }
        g
    }

    #[test]
    fn product_of_two_edges_is_path_242() {
        let g = path_2442(&["A", "B", "C"]);
        assert_eq!(g.game.hatnesses(), &[2, 4, 2]);
        assert_eq!(g.check, Check::Verified);
    }

    #[test]
    fn product_rejects_extra_shared_names() {
        let x = Game::path(&[("A", 2), ("B", 2)]).unwrap();
        let x = ConstructedGame::given(x.clone(), p2("A", "B").witness.unwrap()).unwrap();
        assert!(product(&x, &p2("A", "B"), "A").is_err());
        assert!(product(&x, &p2("Q", "R"), "A").is_err());
    }

    #[test]
    fn product_with_trivial_game_keeps_hatness() {
        let g = product(&p2("A", "B"), &single("A"), "A").unwrap();
        assert_eq!(g.game.hatnesses(), &[2, 2]);
    }

    #[test]
    fn substitution_gives_triangle_244() {
        let g = substitute(&p2("A", "V"), "V", &p2("B", "C")).unwrap();
        assert_eq!(g.game.hatnesses(), &[2, 4, 4]);
        assert_eq!(g.game.edges().len(), 3);
        assert_eq!(g.check, Check::Verified);
    }

    #[test]
    fn substitution_of_single_vertex_keeps_game() {
        let g = substitute(&p2("A", "V"), "V", &single("W")).unwrap();
        assert_eq!(g.game.hatnesses(), &[2, 2]);
    }

    #[test]
    fn attach_vertex2_on_path_gives_cycle_323() {
        let p = path_2442(&["C", "X", "B"]);
        let g = attach_vertex2(&p, "B", "C", "A").unwrap();
        assert_eq!(g.game.hatnesses(), &[3, 4, 3, 2]);
        assert_eq!(g.check, Check::Verified);
    }

    #[test]
    fn attach_vertex2_on_adjacent_pair() {
        let g = attach_vertex2(&p2("B", "C"), "B", "C", "A").unwrap();
        assert_eq!(g.game.hatnesses(), &[3, 3, 2]);
    }

    #[test]
    fn attach_to_edge_doubles() {
        let g = attach_vertex2_to_edge(&p2("B", "C"), "B", "C", "A").unwrap();
        assert_eq!(g.game.hatnesses(), &[4, 4, 2]);
        assert!(attach_vertex2_to_edge(&path_2442(&["B", "X", "C"]), "B", "C", "A").is_err());
    }

    #[test]
    fn zabc_on_edge_gives_c4_4233() {
        let g = attach_path_zabc(&p2("Z", "C"), "Z", "C", ("A", "B")).unwrap();
        assert_eq!(g.game.hatnesses(), &[4, 3, 2, 3]);
        assert_eq!(g.check, Check::Verified);
        assert!(attach_path_zabc(&p2("Z", "C"), "Z", "Z", ("A", "B")).is_err());
    }

    #[test]
    fn leaf_round_trip() {
        let g = path_2442(&["A", "B", "C"]);
        let with = attach_leaf(&g, "B", 3, "L").unwrap();
        let without = remove_leaf(&with, "L").unwrap();
        assert_eq!(without.game, g.game);
        assert!(remove_leaf(&with, "A").is_err());
    }

    #[test]
    fn hint_strategy_wins_with_hint() {
        let g = attach_leaf(&path_2442(&["A", "B", "C"]), "C", 3, "L").unwrap();
        let reduced = g.game.subgame(&["A", "B", "C"]).unwrap();
        let base = reduced.index_of("C").unwrap();
        for arr in Arrangements::new(&reduced).unwrap() {
            let c = arr.0[base];
            for other in 0..2 {
                if other == c {
                    continue;
                }
                let s = hint_strategy(&g, "L", c, other).unwrap();
                assert!(!winners(&reduced, &s, &arr.0).is_empty());
            }
        }
    }

    #[test]
    fn remove_leaf_from_nontrivial_leaf_strategy() {
        // a leaf that actually participates, built by hand on the star K1,2 + leaf
        let game = Game::new(&[("A", 2), ("B", 2), ("L", 3)], &[("A", "B"), ("B", "L")]).unwrap();
        let s = Strategy::tabulate(&game, |v, view| match v {
            0 => view.color(1),
            1 => 1 - view.color(0),
            _ => view.color(1),
        })
        .unwrap();
        let cg = ConstructedGame::given(game, s).unwrap();
        let r = remove_leaf(&cg, "L").unwrap();
        assert!(
            verify_strategy(&r.game, r.witness.as_ref().unwrap())
                .unwrap()
                .winning
        );
    }
}
