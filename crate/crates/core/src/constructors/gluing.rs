use std::collections::HashMap;

use crate::error::{HatsError, Result};
use crate::game::{rank, Arrangement, Game, Provenance};
use crate::strategy::Strategy;
use crate::verify::Scanner;

use super::{
    checked_add, checked_mul, ensure_disjoint, fold, product, rename, Assembly, ConstructedGame,
};

/// Joins every vertex of `marked1` (in `g1`) to every vertex of `marked2`
/// (in `g2`); the marked vertices each gain one new color.
pub fn stitch(
    g1: &ConstructedGame,
    marked1: &[&str],
    g2: &ConstructedGame,
    marked2: &[&str],
) -> Result<ConstructedGame> {
    let (f1, f2) = (g1.witness()?, g2.witness()?);
    let (a, b) = (&g1.game, &g2.game);
    ensure_disjoint(a, b, &[])?;
    let ma: Vec<usize> = marked1
        .iter()
        .map(|n| a.index_of(n))
        .collect::<Result<_>>()?;
    let mb: Vec<usize> = marked2
        .iter()
        .map(|n| b.index_of(n))
        .collect::<Result<_>>()?;
    let mut asm = Assembly::default();
    let mut old_h = Vec::new();
    for x in 0..a.len() {
        let h = a.hatness(x);
        asm.add(
            a.name(x),
            if ma.contains(&x) {
                checked_add(h, 1)?
            } else {
                h
            },
        );
        old_h.push(h);
    }
    for y in 0..b.len() {
        let h = b.hatness(y);
        asm.add(
            b.name(y),
            if mb.contains(&y) {
                checked_add(h, 1)?
            } else {
                h
            },
        );
        old_h.push(h);
    }
    let n1 = a.len();
    let map1: Vec<_> = (0..n1).map(Some).collect();
    let map2: Vec<_> = (0..b.len()).map(|y| Some(n1 + y)).collect();
    asm.edges_of(a, &map1);
    asm.edges_of(b, &map2);
    let reds1 = ma.clone();
    let reds2: Vec<usize> = mb.iter().map(|y| n1 + y).collect();
    for &x in &reds1 {
        for &y in &reds2 {
            asm.edge(x, y);
        }
    }
    let game = asm.build()?;
    let s = Strategy::tabulate(&game, |v, view| {
        let is_red = |u: usize| view.color(u) == old_h[u];
        if v < n1 {
            if reds1.contains(&v) && reds2.iter().any(|&u| is_red(u)) {
                return old_h[v];
            }
            f1.rule_of(v).guess(|x| fold(view.color(x), old_h[x]))
        } else {
            if reds2.contains(&v) && !reds1.iter().any(|&u| is_red(u)) {
                return old_h[v];
            }
            f2.rule_of(v - n1)
                .guess(|y| fold(view.color(n1 + y), old_h[n1 + y]))
        }
    })?;
    let mut glue: Vec<&str> = marked1.to_vec();
    glue.extend_from_slice(marked2);
    let p = Provenance::node(
        "stitch",
        &glue,
        vec![g1.provenance.clone(), g2.provenance.clone()],
    );
    ConstructedGame::winning(game, s, p)
}

/// Deletes `a` from `g1` and `b` from `g2` (both of hatness 2) and joins
/// every former neighbor of `a` to every former neighbor of `b`.
pub fn sew(
    g1: &ConstructedGame,
    a: &str,
    g2: &ConstructedGame,
    b: &str,
) -> Result<ConstructedGame> {
    let (f1, f2) = (g1.witness()?, g2.witness()?);
    let (ga, gb) = (&g1.game, &g2.game);
    ensure_disjoint(ga, gb, &[])?;
    let (ai, bi) = (ga.index_of(a)?, gb.index_of(b)?);
    if ga.hatness(ai) != 2 || gb.hatness(bi) != 2 {
        return Err(HatsError::Precondition(
            "sewn vertices must have hatness 2".into(),
        ));
    }
    let mut asm = Assembly::default();
    let mut map1 = vec![None; ga.len()];
    let mut map2 = vec![None; gb.len()];
    for x in (0..ga.len()).filter(|&x| x != ai) {
        map1[x] = Some(asm.add(ga.name(x), ga.hatness(x)));
    }
    for y in (0..gb.len()).filter(|&y| y != bi) {
        map2[y] = Some(asm.add(gb.name(y), gb.hatness(y)));
    }
    asm.edges_of(ga, &map1);
    asm.edges_of(gb, &map2);
    let na: Vec<usize> = ga.neighbors(ai).iter().map(|&x| map1[x].unwrap()).collect();
    let nb: Vec<usize> = gb.neighbors(bi).iter().map(|&y| map2[y].unwrap()).collect();
    for &x in &na {
        for &y in &nb {
            asm.edge(x, y);
        }
    }
    let game = asm.build()?;
    let mut origin = vec![(0usize, 0usize); game.len()];
    for (x, m) in map1.iter().enumerate() {
        if let Some(v) = m {
            origin[*v] = (1, x);
        }
    }
    for (y, m) in map2.iter().enumerate() {
        if let Some(v) = m {
            origin[*v] = (2, y);
        }
    }
    let s = Strategy::tabulate(&game, |v, view| {
        let (side, x) = origin[v];
        if side == 1 {
            let a_col = if na.contains(&v) {
                f2.rule_of(bi).guess(|y| view.color(map2[y].unwrap()))
            } else {
                0
            };
            f1.rule_of(x).guess(|w| {
                if w == ai {
                    a_col
                } else {
                    view.color(map1[w].unwrap())
                }
            })
        } else {
            let b_col = if nb.contains(&v) {
                1 - f1.rule_of(ai).guess(|w| view.color(map1[w].unwrap()))
            } else {
                0
            };
            f2.rule_of(x).guess(|w| {
                if w == bi {
                    b_col
                } else {
                    view.color(map2[w].unwrap())
                }
            })
        }
    })?;
    let p = Provenance::node(
        "sew",
        &[a, b],
        vec![g1.provenance.clone(), g2.provenance.clone()],
    );
    ConstructedGame::winning(game, s, p)
}

/// For every vertex `A_i` of the winning game `g`, `components[i]` is a
/// winning game with a set of marked vertices. Marked sets are joined as the
/// vertices of `g` are; a marked vertex gains `h(A_i) - 1` new colors.
pub fn fasten(
    g: &ConstructedGame,
    components: &[(ConstructedGame, Vec<String>)],
) -> Result<ConstructedGame> {
    let f = g.witness()?;
    let base = &g.game;
    if components.len() != base.len() {
        return Err(HatsError::Precondition(format!(
            "need one component per vertex ({}), got {}",
            base.len(),
            components.len()
        )));
    }
    let mut asm = Assembly::default();
    let mut maps = Vec::new();
    // new vertex -> (component, vertex in component)
    let mut origin = Vec::new();
    let mut old_h = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, (cg, marked)) in components.iter().enumerate() {
        cg.witness()?;
        let gi = &cg.game;
        for (j, (other, _)) in components.iter().enumerate().take(i) {
            ensure_disjoint(&other.game, gi, &[])
                .map_err(|e| HatsError::Precondition(format!("components {j} and {i}: {e}")))?;
        }
        let marked: Vec<usize> = marked
            .iter()
            .map(|n| gi.index_of(n))
            .collect::<Result<_>>()?;
        let mut map = Vec::new();
        let mut mine = Vec::new();
        for x in 0..gi.len() {
            let h = gi.hatness(x);
            let nh = if marked.contains(&x) {
                checked_add(h, base.hatness(i) - 1)?
            } else {
                h
            };
            let v = asm.add(gi.name(x), nh);
            if marked.contains(&x) {
                mine.push(v);
            }
            map.push(Some(v));
            origin.push((i, x));
            old_h.push(h);
        }
        asm.edges_of(gi, &map);
        maps.push(map.into_iter().map(Option::unwrap).collect::<Vec<_>>());
        members.push(mine);
    }
    for (i, k) in base.edges() {
        for &x in &members[i] {
            for &y in &members[k] {
                asm.edge(x, y);
            }
        }
    }
    let game = asm.build()?;
    let s = Strategy::tabulate(&game, |v, view| {
        let (i, x) = origin[v];
        let fi = components[i].0.witness.as_ref().unwrap();
        if members[i].contains(&v) {
            let mega = |k: usize| {
                members[k]
                    .iter()
                    .map(|&u| view.color(u).saturating_sub(old_h[u] - 1))
                    .max()
                    .unwrap_or(0)
            };
            let t = f.rule_of(i).guess(mega);
            if t != 0 {
                return old_h[v] + t - 1;
            }
        }
        fi.rule_of(x).guess(|y| {
            let u = maps[i][y];
            fold(view.color(u), old_h[u])
        })
    })?;
    let mut glue = Vec::new();
    for (_, m) in components {
        glue.extend(m.iter().cloned());
    }
    let mut ops = vec![g.provenance.clone()];
    ops.extend(components.iter().map(|c| c.0.provenance.clone()));
    let p = Provenance::node("fasten", &glue, ops);
    ConstructedGame::winning(game, s, p)
}

/// One marked vertex per component: the marked vertices are joined as in
/// `g` and `h(A_i)` becomes `h(A_i) * h_i(A_i)`. Built as repeated products.
pub fn fasten_single(
    g: &ConstructedGame,
    components: &[(ConstructedGame, String)],
) -> Result<ConstructedGame> {
    if components.len() != g.game.len() {
        return Err(HatsError::Precondition(
            "need one component per vertex".into(),
        ));
    }
    let map: HashMap<String, String> = components
        .iter()
        .enumerate()
        .map(|(i, (_, m))| (g.game.name(i).to_string(), m.clone()))
        .collect();
    let mut acc = rename(g, &map)?;
    for (cg, marked) in components {
        acc = product(&acc, cg, marked)?;
    }
    let glue: Vec<&str> = components.iter().map(|c| c.1.as_str()).collect();
    let mut ops = vec![g.provenance.clone()];
    ops.extend(components.iter().map(|c| c.0.provenance.clone()));
    acc.provenance = Provenance::node("fasten-single", &glue, ops);
    acc.reason = "fasten-single".into();
    Ok(acc)
}

/// Component of a cone: a winning game with its copy of the apex and the
/// apex neighbor that stands for a vertex of the base game.
#[derive(Clone, Debug)]
pub struct ConeComponent {
    pub game: ConstructedGame,
    pub apex: String,
    pub marked: String,
}

struct Placed {
    map: Vec<usize>,
    apex: usize,
    marked: usize,
}

/// Lays out components, identifying the apex copies listed in `apex_group`.
fn place(
    asm: &mut Assembly,
    parts: &[(&ConstructedGame, &str, &str)],
    apex_group: &[usize],
    apex_index: &mut Vec<Option<usize>>,
) -> Result<Vec<Placed>> {
    let mut placed = Vec::new();
    for (i, (cg, apex, marked)) in parts.iter().enumerate() {
        let gi = &cg.game;
        let (oi, ai) = (gi.index_of(apex)?, gi.index_of(marked)?);
        if !gi.has_edge(oi, ai) {
            return Err(HatsError::Precondition(format!(
                "`{marked}` is not adjacent to `{apex}` in component {i}"
            )));
        }
        let mut map = Vec::new();
        for x in 0..gi.len() {
            if x == oi {
                let slot = &mut apex_index[apex_group[i]];
                let v = match slot {
                    Some(v) => *v,
                    None => {
                        let v = asm.add(gi.name(x), gi.hatness(x));
                        *slot = Some(v);
                        v
                    }
                };
                map.push(v);
            } else {
                map.push(asm.add(gi.name(x), gi.hatness(x)));
            }
        }
        let opt: Vec<_> = map.iter().copied().map(Some).collect();
        asm.edges_of(gi, &opt);
        placed.push(Placed {
            apex: oi,
            marked: ai,
            map,
        });
    }
    Ok(placed)
}

/// Glues the components at a common apex `O` and joins their marked
/// vertices as in `g`. A marked vertex `A_i` takes composite colors
/// `c_i + h_i(A_i) * c_g`.
pub fn cone(g: &ConstructedGame, components: &[ConeComponent]) -> Result<ConstructedGame> {
    let f = g.witness()?;
    let base = &g.game;
    if components.len() != base.len() || components.is_empty() {
        return Err(HatsError::Precondition(
            "need one component per vertex".into(),
        ));
    }
    let oh = components[0]
        .game
        .game
        .hatness(components[0].game.game.index_of(&components[0].apex)?);
    for c in components {
        if c.game.game.hatness(c.game.game.index_of(&c.apex)?) != oh {
            return Err(HatsError::Precondition(
                "apex hatness differs between components".into(),
            ));
        }
        c.game.witness()?;
    }
    let parts: Vec<_> = components
        .iter()
        .map(|c| (&c.game, c.apex.as_str(), c.marked.as_str()))
        .collect();
    let mut asm = Assembly::default();
    let mut apex = vec![None];
    let placed = place(&mut asm, &parts, &vec![0; parts.len()], &mut apex)?;
    let o = apex[0].unwrap();
    let hi: Vec<u32> = components
        .iter()
        .zip(&placed)
        .map(|(c, p)| c.game.game.hatness(p.marked))
        .collect();
    let marked_v: Vec<usize> = placed.iter().map(|p| p.map[p.marked]).collect();
    let mut owner = vec![None; asm.vertices.len()];
    for (i, &v) in marked_v.iter().enumerate() {
        asm.vertices[v].1 = checked_mul(hi[i], base.hatness(i))?;
        owner[v] = Some(i);
    }
    for (i, k) in base.edges() {
        asm.edge(marked_v[i], marked_v[k]);
    }
    let game = asm.build()?;
    let mut origin = vec![None; game.len()];
    for (i, p) in placed.iter().enumerate() {
        for (x, &v) in p.map.iter().enumerate() {
            if v != o {
                origin[v] = Some((i, x));
            }
        }
    }
    let s = Strategy::tabulate(&game, |v, view| {
        let g_coord = |k: usize| view.color(marked_v[k]) / hi[k];
        let play = |i: usize, x: usize| {
            let p = &placed[i];
            components[i]
                .game
                .witness
                .as_ref()
                .unwrap()
                .rule_of(x)
                .guess(|y| {
                    let c = view.color(p.map[y]);
                    if y == p.marked {
                        c % hi[i]
                    } else {
                        c
                    }
                })
        };
        if v == o {
            // dispatch to the first component whose marked vertex wins in g
            let j = (0..base.len()).find(|&i| f.rule_of(i).guess(g_coord) == g_coord(i));
            match j {
                Some(i) => play(i, placed[i].apex),
                None => 0,
            }
        } else if let Some(i) = owner[v] {
            let ci = play(i, placed[i].marked);
            ci + hi[i] * f.rule_of(i).guess(g_coord)
        } else {
            let (i, x) = origin[v].unwrap();
            play(i, x)
        }
    })?;
    let mut glue = vec![game.name(o).to_string()];
    glue.extend(components.iter().map(|c| c.marked.clone()));
    let mut ops = vec![g.provenance.clone()];
    ops.extend(components.iter().map(|c| c.game.provenance.clone()));
    let p = Provenance::node("cone", &glue, ops);
    ConstructedGame::winning(game, s, p)
}

/// Result of [`check_predictable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predictability {
    /// `selector[r]` is the chosen vertex for the view of the set with rank `r`.
    Predictable { selector: Vec<usize> },
    /// No single choice works for the set's colors in this arrangement.
    Violation { arrangement: Arrangement },
}

/// Decides whether `set` is predictable for `strategy`: whether a sage of
/// the set can be chosen from the set's colors alone so that it is among
/// the set's correct guessers whenever there are any. Ties go to the first
/// vertex in canonical order.
pub fn check_predictable(
    game: &Game,
    strategy: &Strategy,
    set: &[usize],
) -> Result<Predictability> {
    let mut members: Vec<usize> = set.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() || members.len() > 64 {
        return Err(HatsError::Precondition(
            "set must have between 1 and 64 vertices".into(),
        ));
    }
    let radices: Vec<u32> = members.iter().map(|&v| game.hatness(v)).collect();
    let views = radices
        .iter()
        .try_fold(1usize, |a, &r| a.checked_mul(r as usize));
    let views = views.ok_or_else(|| HatsError::TooLarge("views of the set".into()))?;
    let sc = Scanner::new(game, strategy)?;
    let mut common = vec![u64::MAX; views];
    let mut sub = vec![0u32; members.len()];
    let mut violation = None;
    sc.scan(0, sc.total, |colors, vw| {
        let mut w = 0u64;
        for (k, &v) in members.iter().enumerate() {
            sub[k] = colors[v];
            if sc.correct(v, colors, vw) {
                w |= 1 << k;
            }
        }
        if w != 0 {
            let r = rank(&radices, &sub) as usize;
            common[r] &= w;
            if common[r] == 0 {
                violation = Some(colors.to_vec());
                return false;
            }
        }
        true
    });
    if let Some(a) = violation {
        return Ok(Predictability::Violation {
            arrangement: Arrangement(a),
        });
    }
    let selector = common
        .into_iter()
        .map(|m| {
            members[if m == u64::MAX {
                0
            } else {
                m.trailing_zeros() as usize
            }]
        })
        .collect();
    Ok(Predictability::Predictable { selector })
}

/// Component for [`cone_dispatchers`]: the vertex standing for a base vertex
/// and the dispatcher copy next to it, identified with dispatcher `principal`.
#[derive(Clone, Debug)]
pub struct DispatchComponent {
    pub game: ConstructedGame,
    pub marked: String,
    pub dispatcher: String,
    pub principal: usize,
}

/// Cone with several dispatchers: dispatcher `j` sees the set `cover[j]` of
/// the base game, which must be predictable for the base witness.
pub fn cone_dispatchers(
    g: &ConstructedGame,
    cover: &[Vec<String>],
    components: &[DispatchComponent],
) -> Result<ConstructedGame> {
    let f = g.witness()?;
    let base = &g.game;
    if components.len() != base.len() {
        return Err(HatsError::Precondition(
            "need one component per vertex".into(),
        ));
    }
    let sets: Vec<Vec<usize>> = cover
        .iter()
        .map(|s| {
            let mut v = s
                .iter()
                .map(|n| base.index_of(n))
                .collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            v.dedup();
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let m = sets.len();
    let mut covered = vec![false; base.len()];
    for s in &sets {
        for &v in s {
            covered[v] = true;
        }
    }
    if covered.contains(&false) {
        return Err(HatsError::Precondition(
            "the sets must cover the base game".into(),
        ));
    }
    for (j, s) in sets.iter().enumerate() {
        let own = s.iter().any(|v| {
            !sets
                .iter()
                .enumerate()
                .any(|(k, t)| k != j && t.contains(v))
        });
        if !own {
            return Err(HatsError::Precondition(format!(
                "set {j} is contained in the union of the others"
            )));
        }
    }
    for (l, c) in components.iter().enumerate() {
        if c.principal >= m || !sets[c.principal].contains(&l) {
            return Err(HatsError::Precondition(format!(
                "component {l}: vertex is not in its principal set"
            )));
        }
        c.game.witness()?;
    }
    let mut selectors = Vec::new();
    for (j, s) in sets.iter().enumerate() {
        match check_predictable(base, f, s)? {
            Predictability::Predictable { selector } => selectors.push(selector),
            Predictability::Violation { arrangement } => {
                return Err(HatsError::Precondition(format!(
                    "set {j} is not predictable, see arrangement {:?}",
                    arrangement.0
                )))
            }
        }
    }
    let parts: Vec<_> = components
        .iter()
        .map(|c| (&c.game, c.dispatcher.as_str(), c.marked.as_str()))
        .collect();
    let group: Vec<usize> = components.iter().map(|c| c.principal).collect();
    let mut asm = Assembly::default();
    let mut disp = vec![None; m];
    let placed = place(&mut asm, &parts, &group, &mut disp)?;
    let disp: Vec<usize> = disp
        .into_iter()
        .map(|d| d.expect("each set owns a vertex"))
        .collect();
    for (j, &d) in disp.iter().enumerate() {
        for (l, c) in components.iter().enumerate() {
            if c.principal == j && c.game.game.hatness(placed[l].apex) != asm.vertices[d].1 {
                return Err(HatsError::Precondition(format!(
                    "dispatcher {j} hatness differs"
                )));
            }
        }
    }
    let hl: Vec<u32> = components
        .iter()
        .zip(&placed)
        .map(|(c, p)| c.game.game.hatness(p.marked))
        .collect();
    let marked_v: Vec<usize> = placed.iter().map(|p| p.map[p.marked]).collect();
    for (l, &v) in marked_v.iter().enumerate() {
        asm.vertices[v].1 = checked_mul(hl[l], base.hatness(l))?;
    }
    for (a, b) in base.edges() {
        asm.edge(marked_v[a], marked_v[b]);
    }
    for (j, s) in sets.iter().enumerate() {
        for &l in s {
            asm.edge(disp[j], marked_v[l]);
        }
    }
    let game = asm.build()?;
    let mut origin = vec![None; game.len()];
    for (l, p) in placed.iter().enumerate() {
        for (x, &v) in p.map.iter().enumerate() {
            if x != p.apex {
                origin[v] = Some((l, x));
            }
        }
    }
    let set_radices: Vec<Vec<u32>> = sets
        .iter()
        .map(|s| s.iter().map(|&v| base.hatness(v)).collect())
        .collect();
    let s = Strategy::tabulate(&game, |v, view| {
        let g_coord = |k: usize| view.color(marked_v[k]) / hl[k];
        let play = |l: usize, x: usize| {
            let p = &placed[l];
            components[l]
                .game
                .witness
                .as_ref()
                .unwrap()
                .rule_of(x)
                .guess(|y| {
                    let c = view.color(p.map[y]);
                    if y == p.marked {
                        c % hl[l]
                    } else {
                        c
                    }
                })
        };
        if let Some(j) = disp.iter().position(|&d| d == v) {
            let sub: Vec<u32> = sets[j].iter().map(|&k| g_coord(k)).collect();
            let chosen = selectors[j][rank(&set_radices[j], &sub) as usize];
            if components[chosen].principal == j {
                play(chosen, placed[chosen].apex)
            } else {
                0
            }
        } else {
            let (l, x) = origin[v].unwrap();
            if x == placed[l].marked {
                play(l, x) + hl[l] * f.rule_of(l).guess(g_coord)
            } else {
                play(l, x)
            }
        }
    })?;
    let glue: Vec<String> = disp.iter().map(|&d| game.name(d).to_string()).collect();
    let mut ops = vec![g.provenance.clone()];
    ops.extend(components.iter().map(|c| c.game.provenance.clone()));
    let p = Provenance::node("cone-dispatchers", &glue, ops);
    ConstructedGame::winning(game, s, p)
}
