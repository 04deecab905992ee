//! Deterministic strategies as per-vertex lookup tables.
//!
//! A vertex's view is the tuple of its neighbors' colors, read as a
//! little-endian mixed-radix number: the first neighbor in canonical order is
//! the least significant digit.

use serde::{Deserialize, Serialize};

use crate::error::{HatsError, Result};
use crate::game::{Color, Game, FORMAT};

/// Guess table of one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    neighbors: Vec<usize>,
    radices: Vec<u32>,
    table: Vec<Color>,
}

impl Rule {
    pub fn neighbors(&self) -> &[usize] {
        &self.neighbors
    }

    pub fn table(&self) -> &[Color] {
        &self.table
    }

    /// Index of the view in which neighbor `u` has color `color_of(u)`.
    pub fn view_of(&self, color_of: impl Fn(usize) -> Color) -> usize {
        let mut idx = 0usize;
        for k in (0..self.neighbors.len()).rev() {
            idx = idx * self.radices[k] as usize + color_of(self.neighbors[k]) as usize;
        }
        idx
    }

    pub fn guess(&self, color_of: impl Fn(usize) -> Color) -> Color {
        self.table[self.view_of(color_of)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    rules: Vec<Rule>,
}

/// Colors of the neighbors of the vertex currently being tabulated.
/// Indexed by vertex; only neighbors carry meaningful values.
pub struct View<'a> {
    colors: &'a [Color],
    neighbors: &'a [usize],
}

impl View<'_> {
    pub fn color(&self, u: usize) -> Color {
        debug_assert!(self.neighbors.contains(&u), "vertex {u} is not visible");
        self.colors[u]
    }

    pub fn neighbors(&self) -> &[usize] {
        self.neighbors
    }

    pub fn sees(&self, u: usize) -> bool {
        self.neighbors.binary_search(&u).is_ok()
    }
}

impl Strategy {
    /// Builds a strategy from raw tables, validating lengths and guesses.
    pub fn new(game: &Game, tables: Vec<Vec<Color>>) -> Result<Self> {
        if tables.len() != game.len() {
            return Err(HatsError::InvalidStrategy {
                vertex: String::new(),
                index: tables.len(),
                detail: format!("expected {} tables", game.len()),
            });
        }
        let rules = tables
            .into_iter()
            .enumerate()
            .map(|(v, table)| Self::rule(game, v, table))
            .collect::<Result<_>>()?;
        Ok(Strategy { rules })
    }

    fn rule(game: &Game, v: usize, table: Vec<Color>) -> Result<Rule> {
        let expected = game.view_count(v)?;
        if table.len() != expected {
            return Err(HatsError::InvalidStrategy {
                vertex: game.name(v).to_string(),
                index: table.len(),
                detail: format!("table has {} entries, expected {expected}", table.len()),
            });
        }
        if let Some(i) = table.iter().position(|&c| c >= game.hatness(v)) {
            return Err(HatsError::InvalidStrategy {
                vertex: game.name(v).to_string(),
                index: i,
                detail: format!("guess {} out of range 0..{}", table[i], game.hatness(v)),
            });
        }
        let neighbors = game.neighbors(v).to_vec();
        let radices = neighbors.iter().map(|&u| game.hatness(u)).collect();
        Ok(Rule {
            neighbors,
            radices,
            table,
        })
    }

    /// Evaluates `rule(v, view)` on every view of every vertex.
    pub fn tabulate(game: &Game, mut rule: impl FnMut(usize, &View) -> Color) -> Result<Self> {
        let mut colors = vec![0 as Color; game.len()];
        let mut tables = Vec::with_capacity(game.len());
        for v in 0..game.len() {
            let nb = game.neighbors(v);
            let count = game.view_count(v)?;
            let mut table = Vec::with_capacity(count);
            for &u in nb {
                colors[u] = 0;
            }
            for _ in 0..count {
                let view = View {
                    colors: &colors,
                    neighbors: nb,
                };
                table.push(rule(v, &view));
                for &u in nb {
                    colors[u] += 1;
                    if colors[u] < game.hatness(u) {
                        break;
                    }
                    colors[u] = 0;
                }
            }
            tables.push(table);
        }
        Strategy::new(game, tables)
    }

    /// Every vertex guesses `0`.
    pub fn constant(game: &Game) -> Result<Self> {
        Strategy::tabulate(game, |_, _| 0)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule_of(&self, v: usize) -> &Rule {
        &self.rules[v]
    }

    pub fn table(&self, v: usize) -> &[Color] {
        &self.rules[v].table
    }

    /// Guess of `v` given the colors of the whole arrangement.
    pub fn guess(&self, v: usize, colors: &[Color]) -> Color {
        self.rules[v].guess(|u| colors[u])
    }

    /// Checks that this strategy is shaped for `game`.
    pub fn validate(&self, game: &Game) -> Result<()> {
        if self.rules.len() != game.len() {
            return Err(HatsError::InvalidStrategy {
                vertex: String::new(),
                index: self.rules.len(),
                detail: format!(
                    "strategy covers {} vertices, game has {}",
                    self.rules.len(),
                    game.len()
                ),
            });
        }
        for (v, r) in self.rules.iter().enumerate() {
            if r.neighbors != game.neighbors(v) {
                return Err(HatsError::InvalidStrategy {
                    vertex: game.name(v).to_string(),
                    index: 0,
                    detail: "neighbor list differs from the game".into(),
                });
            }
            Self::rule(game, v, r.table.clone())?;
        }
        Ok(())
    }

    pub fn to_json(&self, game: &Game) -> String {
        let doc = StrategyDoc {
            format: FORMAT.into(),
            vertices: self
                .rules
                .iter()
                .enumerate()
                .map(|(v, r)| RuleDoc {
                    name: game.name(v).to_string(),
                    neighbors: r
                        .neighbors
                        .iter()
                        .map(|&u| game.name(u).to_string())
                        .collect(),
                    table: r.table.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    /// Reads a strategy for `game`. Vertices may be listed in any order but
    /// each neighbor list must match the game's canonical order.
    pub fn from_json(game: &Game, text: &str) -> Result<Self> {
        let doc: StrategyDoc = serde_json::from_str(text)?;
        if doc.format != FORMAT {
            return Err(HatsError::Format(doc.format));
        }
        let mut tables: Vec<Option<Vec<Color>>> = vec![None; game.len()];
        for r in doc.vertices {
            let v = game.index_of(&r.name)?;
            let listed = r
                .neighbors
                .iter()
                .map(|n| game.index_of(n))
                .collect::<Result<Vec<_>>>()?;
            if listed != game.neighbors(v) {
                return Err(HatsError::InvalidStrategy {
                    vertex: r.name,
                    index: 0,
                    detail: "neighbor list must match the game in canonical order".into(),
                });
            }
            tables[v] = Some(r.table);
        }
        let tables = tables
            .into_iter()
            .enumerate()
            .map(|(v, t)| {
                t.ok_or_else(|| HatsError::InvalidStrategy {
                    vertex: game.name(v).to_string(),
                    index: 0,
                    detail: "missing table".into(),
                })
            })
            .collect::<Result<_>>()?;
        Strategy::new(game, tables)
    }
}

/// View index of `v` under a full arrangement.
pub fn view_index(game: &Game, v: usize, colors: &[Color]) -> usize {
    let mut idx = 0usize;
    for &u in game.neighbors(v).iter().rev() {
        idx = idx * game.hatness(u) as usize + colors[u] as usize;
    }
    idx
}

#[derive(Serialize, Deserialize)]
struct RuleDoc {
    name: String,
    neighbors: Vec<String>,
    table: Vec<Color>,
}

#[derive(Serialize, Deserialize)]
struct StrategyDoc {
    format: String,
    vertices: Vec<RuleDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn little_endian_views() {
        let g = Game::new(&[("A", 2), ("B", 3), ("C", 5)], &[("A", "B"), ("A", "C")]).unwrap();
        // first neighbor B is least significant
        assert_eq!(view_index(&g, 0, &[0, 2, 1]), 2 + 3);
        assert_eq!(view_index(&g, 0, &[0, 0, 4]), 12);
        let s = Strategy::tabulate(&g, |v, view| {
            if v == 0 {
                (view.color(1) + view.color(2)) % 2
            } else {
                view.color(0)
            }
        })
        .unwrap();
        assert_eq!(s.table(0).len(), 15);
        assert_eq!(s.guess(0, &[0, 2, 1]), 1);
        assert_eq!(s.guess(2, &[1, 0, 0]), 1);
    }

    #[test]
    fn validation_names_vertex_and_index() {
        let g = Game::path(&[("A", 2), ("B", 2)]).unwrap();
        match Strategy::new(&g, vec![vec![0, 1], vec![0, 2]]) {
            Err(HatsError::InvalidStrategy { vertex, index, .. }) => {
                assert_eq!(vertex, "B");
                assert_eq!(index, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Strategy::new(&g, vec![vec![0], vec![0, 1]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Game::cycle(&[("A", 2), ("B", 3), ("C", 2)]).unwrap();
        let s = Strategy::tabulate(&g, |v, view| {
            view.neighbors().iter().map(|&u| view.color(u)).sum::<u32>() % g.hatness(v)
        })
        .unwrap();
        let text = s.to_json(&g);
        let back = Strategy::from_json(&g, &text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(&g), text);
    }

    #[test]
    fn json_rejects_reordered_neighbors() {
        let g = Game::path(&[("A", 2), ("B", 2), ("C", 2)]).unwrap();
        let s = Strategy::constant(&g).unwrap();
        let text = s.to_json(&g).replace(r#"["A","C"]"#, r#"["C","A"]"#);
        assert!(Strategy::from_json(&g, &text).is_err());
    }
}
