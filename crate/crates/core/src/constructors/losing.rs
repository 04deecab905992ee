use crate::error::{HatsError, Result};
use crate::game::Provenance;

use super::{checked_mul, ensure_disjoint, Assembly, ConstructedGame};

/// Attaches a pendant vertex of hatness 2 to `b` of a losing game and sets
/// `h(b)` to `2h(b) - 1`; the game stays losing.
pub fn losing_pendant(g: &ConstructedGame, b: &str, name: &str) -> Result<ConstructedGame> {
    g.require_losing()?;
    let old = &g.game;
    let bi = old.index_of(b)?;
    let mut asm = Assembly::default();
    for x in 0..old.len() {
        let h = if x == bi {
            checked_mul(old.hatness(x), 2)? - 1
        } else {
            old.hatness(x)
        };
        asm.add(old.name(x), h);
    }
    let ai = asm.add(name, 2);
    let ident: Vec<_> = (0..old.len()).map(Some).collect();
    asm.edges_of(old, &ident);
    asm.edge(ai, bi);
    let p = Provenance::node("pendant-2h-1", &[b], vec![g.provenance.clone()]);
    Ok(ConstructedGame::losing(asm.build()?, p))
}

/// Joins a new vertex of hatness 2 to two hatness-2 vertices `b`, `c` of a
/// losing game, raising them to 3 and 7; the game stays losing.
pub fn losing_attach_two(
    g: &ConstructedGame,
    b: &str,
    c: &str,
    name: &str,
) -> Result<ConstructedGame> {
    g.require_losing()?;
    let old = &g.game;
    let (bi, ci) = (old.index_of(b)?, old.index_of(c)?);
    if bi == ci || old.hatness(bi) != 2 || old.hatness(ci) != 2 {
        return Err(HatsError::Precondition(
            "need two distinct vertices of hatness 2".into(),
        ));
    }
    let mut asm = Assembly::default();
    for x in 0..old.len() {
        let h = match x {
            _ if x == bi => 3,
            _ if x == ci => 7,
            _ => old.hatness(x),
        };
        asm.add(old.name(x), h);
    }
    let ai = asm.add(name, 2);
    let ident: Vec<_> = (0..old.len()).map(Some).collect();
    asm.edges_of(old, &ident);
    asm.edge(ai, bi);
    asm.edge(ai, ci);
    let p = Provenance::node("ramsey-3x7", &[b, c], vec![g.provenance.clone()]);
    Ok(ConstructedGame::losing(asm.build()?, p))
}

/// Glues two losing games at `at`, where `h1(at) >= h2(at) = 2`; the glued
/// vertex keeps `h1(at)`.
pub fn glue_losing(
    g1: &ConstructedGame,
    g2: &ConstructedGame,
    at: &str,
) -> Result<ConstructedGame> {
    g1.require_losing()?;
    g2.require_losing()?;
    let (a, b) = (&g1.game, &g2.game);
    let (a1, a2) = (a.index_of(at)?, b.index_of(at)?);
    ensure_disjoint(a, b, &[at])?;
    if b.hatness(a2) != 2 || a.hatness(a1) < 2 {
        return Err(HatsError::Precondition(format!(
            "need h1({at}) >= h2({at}) = 2"
        )));
    }
    let mut asm = Assembly::default();
    let map1: Vec<_> = (0..a.len())
        .map(|x| Some(asm.add(a.name(x), a.hatness(x))))
        .collect();
    let map2: Vec<_> = (0..b.len())
        .map(|y| {
            Some(if y == a2 {
                a1
            } else {
                asm.add(b.name(y), b.hatness(y))
            })
        })
        .collect();
    asm.edges_of(a, &map1);
    asm.edges_of(b, &map2);
    let p = Provenance::node(
        "glue-losing",
        &[at],
        vec![g1.provenance.clone(), g2.provenance.clone()],
    );
    Ok(ConstructedGame::losing(asm.build()?, p))
}
