//! Cycles with hatnesses between 2 and 4 and a vertex of hatness 2.

use crate::constructors::{
    attach_path_zabc, attach_vertex2, extend, product, reorder, restrict, substitute,
    ConstructedGame,
};
use crate::error::{HatsError, Result};
use crate::game::Game;
use crate::strategy::Strategy;
use crate::verdict::Verdict;

/// The classical winning game on an edge with two colors each.
pub fn p2(a: &str, b: &str) -> Result<ConstructedGame> {
    let game = Game::path(&[(a, 2), (b, 2)])?;
    let s = Strategy::tabulate(&game, |v, view| {
        let other = view.color(1 - v);
        if v == 0 {
            other
        } else {
            1 - other
        }
    })?;
    ConstructedGame::given(game, s)
}

/// The path through `names` with hatnesses `2, 4, ..., 4, 2`, built as a
/// chain of products of edges with hatnesses `2, 2`.
pub fn path_2442(names: &[&str]) -> Result<ConstructedGame> {
    if names.len() < 2 {
        return Err(HatsError::Precondition("a path needs two vertices".into()));
    }
    let mut acc = p2(names[0], names[1])?;
    for w in names[1..].windows(2) {
        acc = product(&acc, &p2(w[0], w[1])?, w[0])?;
    }
    Ok(acc)
}

/// Triangle with hatnesses `2, 4, 4`: an edge substituted into one end of
/// another edge.
pub fn triangle_244(a: &str, b: &str, c: &str) -> Result<ConstructedGame> {
    let outer = p2(a, "__slot")?;
    substitute(&outer, "__slot", &p2(b, c)?)
}

/// Vertex names of a cycle in walking order starting at `start`.
fn cycle_order(game: &Game, start: usize) -> Result<Vec<usize>> {
    let n = game.len();
    if n < 3 || (0..n).any(|v| game.degree(v) != 2) {
        return Err(HatsError::Precondition(
            "the game is not played on a cycle".into(),
        ));
    }
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = game.neighbors(start)[0];
    while cur != start {
        order.push(cur);
        let next = game
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .unwrap();
        prev = cur;
        cur = next;
    }
    if order.len() != n {
        return Err(HatsError::Precondition(
            "the game is not played on a cycle".into(),
        ));
    }
    Ok(order)
}

/// Classifies a cycle game with `h(a) = 2` and hatnesses in `2..=4`.
/// Winning cases come with a witness built by constructors on the largest
/// hat function of the case and then restricted; other games are Unknown.
pub fn cycle_classify(game: &Game, a: &str) -> Result<Verdict> {
    let ai = game.index_of(a)?;
    let order = cycle_order(game, ai)?;
    if game.hatness(ai) != 2 || game.hatnesses().iter().any(|&h| !(2..=4).contains(&h)) {
        return Err(HatsError::Precondition(
            "need h(a) = 2 and hatnesses in 2..=4".into(),
        ));
    }
    let n = order.len();
    let h = |k: usize| game.hatness(order[k % n]);
    let name = |k: usize| game.name(order[k % n]);
    let built = if n == 3 {
        Some(("cycle-triangle", triangle_244(name(0), name(1), name(2))?))
    } else if let Some(j) = (1..n).find(|&j| h(j) == 2) {
        // walk the side on which the path stays an induced subgraph
        let arc: Vec<usize> = if j + 1 < n {
            (0..=j).collect()
        } else {
            vec![0, n - 1]
        };
        let names: Vec<&str> = arc.iter().map(|&k| name(k)).collect();
        let path = path_2442(&names)?;
        let mut host_h = vec![4; n];
        host_h[0] = 2;
        host_h[*arc.last().unwrap()] = 2;
        Some((
            "cycle-two-2",
            extend(&path, &maximal(&order, game, &host_h)?)?,
        ))
    } else if h(1) == 3 && h(n - 1) == 3 {
        let arc: Vec<&str> = (1..n).map(name).collect();
        let path = path_2442(&arc)?;
        Some((
            "cycle-3-2-3",
            attach_vertex2(&path, name(1), name(n - 1), name(0))?,
        ))
    } else if h(1) == 3 && h(2) == 3 {
        let arc: Vec<&str> = (2..n).rev().map(name).collect();
        let path = path_2442(&arc)?;
        Some((
            "cycle-2-3-3",
            attach_path_zabc(&path, name(n - 1), name(2), (name(0), name(1)))?,
        ))
    } else if h(n - 1) == 3 && h(n - 2) == 3 {
        let arc: Vec<&str> = (1..n - 1).map(name).collect();
        let path = path_2442(&arc)?;
        Some((
            "cycle-2-3-3",
            attach_path_zabc(&path, name(1), name(n - 2), (name(0), name(n - 1)))?,
        ))
    } else {
        None
    };
    let Some((reason, max)) = built else {
        return Ok(Verdict::unknown("cycle-open"));
    };
    let lower: Vec<(&str, u32)> = (0..max.game.len())
        .filter_map(|x| {
            let want = game.hatness(game.index_of(max.game.name(x)).ok()?);
            (want < max.game.hatness(x)).then(|| (max.game.name(x), want))
        })
        .collect();
    let cg = if lower.is_empty() {
        max.clone()
    } else {
        restrict(&max, &lower)?
    };
    let cg = reorder(&cg, game)?;
    Ok(Verdict::winning(cg.witness, reason))
}

/// The cycle with the vertices of `game` and hatnesses `hats` listed in walking order.
fn maximal(order: &[usize], game: &Game, hats: &[u32]) -> Result<Game> {
    let vs: Vec<(&str, u32)> = order
        .iter()
        .zip(hats)
        .map(|(&v, &h)| (game.name(v), h))
        .collect();
    Game::cycle(&vs)
}
