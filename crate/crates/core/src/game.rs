//! Graphs with hatness, arrangements of hats and their enumeration.
//!
//! Vertices keep the order in which they were supplied; that order is the
//! canonical order used for neighbor lists, view indices and the
//! lexicographic order of arrangements (first vertex most significant).

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HatsError, Result};

pub type Color = u32;

/// Tag carried by every JSON document the crate reads or writes.
pub const FORMAT: &str = "hats/1";

/// An assignment of a color to every vertex, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Arrangement(pub Vec<Color>);

impl Arrangement {
    pub fn colors(&self) -> &[Color] {
        &self.0
    }
}

/// A simple undirected graph whose vertices carry a hatness `h(v) >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    names: Vec<String>,
    hatness: Vec<u32>,
    adj: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl Game {
    /// Builds a game. Repeated edges are merged; self-loops, unknown names,
    /// duplicate vertices and zero hatness are rejected.
    pub fn new<S: AsRef<str>>(vertices: &[(S, u32)], edges: &[(S, S)]) -> Result<Self> {
        let mut names = Vec::with_capacity(vertices.len());
        let mut hatness = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for (name, h) in vertices {
            let name = name.as_ref().to_string();
            if *h == 0 {
                return Err(HatsError::ZeroHatness(name));
            }
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(HatsError::DuplicateVertex(name));
            }
            names.push(name);
            hatness.push(*h);
        }
        let mut sets = vec![BTreeSet::new(); names.len()];
        for (a, b) in edges {
            let u = lookup(&index, a.as_ref())?;
            let v = lookup(&index, b.as_ref())?;
            if u == v {
                return Err(HatsError::SelfLoop(a.as_ref().to_string()));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let adj = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Game {
            names,
            hatness,
            adj,
            index,
        })
    }

    /// Same as [`Game::new`] with vertices and edges given by index.
    pub fn from_indices(vertices: &[(String, u32)], edges: &[(usize, usize)]) -> Result<Self> {
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(u, v)| {
                let name = |i: usize| {
                    vertices
                        .get(i)
                        .map(|x| x.0.clone())
                        .ok_or_else(|| HatsError::UnknownVertex(format!("#{i}")))
                };
                Ok((name(u)?, name(v)?))
            })
            .collect::<Result<_>>()?;
        Game::new(vertices, &named)
    }

    pub fn clique(vertices: &[(&str, u32)]) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                edges.push((vertices[i].0, vertices[j].0));
            }
        }
        Game::new(vertices, &edges)
    }

    pub fn path(vertices: &[(&str, u32)]) -> Result<Self> {
        let edges: Vec<_> = vertices.windows(2).map(|w| (w[0].0, w[1].0)).collect();
        Game::new(vertices, &edges)
    }

    pub fn cycle(vertices: &[(&str, u32)]) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(HatsError::Precondition(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        let edges: Vec<_> = (0..n)
            .map(|i| (vertices[i].0, vertices[(i + 1) % n].0))
            .collect();
        Game::new(vertices, &edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hatness(&self, v: usize) -> u32 {
        self.hatness[v]
    }

    pub fn hatnesses(&self) -> &[u32] {
        &self.hatness
    }

    /// Neighbors of `v` in canonical order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertex_list(&self) -> Vec<(String, u32)> {
        self.names
            .iter()
            .cloned()
            .zip(self.hatness.iter().copied())
            .collect()
    }

    /// Number of hat arrangements, checked.
    pub fn arrangement_count(&self) -> Result<u128> {
        self.hatness.iter().try_fold(1u128, |acc, &h| {
            acc.checked_mul(h as u128)
                .ok_or_else(|| HatsError::Overflow("arrangement count exceeds u128".into()))
        })
    }

    /// Arrangement count when it fits the exhaustive routines.
    pub fn enumerable_count(&self) -> Result<u64> {
        let total = self.arrangement_count()?;
        u64::try_from(total).map_err(|_| HatsError::TooLarge(format!("{total} arrangements")))
    }

    /// Number of distinct views of `v`, i.e. the product of its neighbors' hatnesses.
    pub fn view_count(&self, v: usize) -> Result<usize> {
        self.adj[v].iter().try_fold(1usize, |acc, &u| {
            acc.checked_mul(self.hatness[u] as usize)
                .ok_or_else(|| HatsError::Overflow(format!("view count of `{}`", self.names[v])))
        })
    }

    /// Induced subgraph on the named vertices, kept in this game's order.
    pub fn subgame<S: AsRef<str>>(&self, names: &[S]) -> Result<Game> {
        let mut keep = vec![false; self.len()];
        for n in names {
            keep[self.index_of(n.as_ref())?] = true;
        }
        let vertices: Vec<(String, u32)> = (0..self.len())
            .filter(|&v| keep[v])
            .map(|v| (self.names[v].clone(), self.hatness[v]))
            .collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect();
        Game::new(&vertices, &edges)
    }

    /// Copy with different hatnesses on some vertices.
    pub fn with_hatness(&self, changes: &[(&str, u32)]) -> Result<Game> {
        let mut vertices = self.vertex_list();
        for (name, h) in changes {
            vertices[self.index_of(name)?].1 = *h;
        }
        Game::from_indices(&vertices, &self.edges())
    }

    /// Copy with vertices renamed; names missing from `map` stay.
    pub fn renamed(&self, map: &HashMap<String, String>) -> Result<Game> {
        let vertices: Vec<(String, u32)> = self
            .vertex_list()
            .into_iter()
            .map(|(n, h)| (map.get(&n).cloned().unwrap_or(n), h))
            .collect();
        Game::from_indices(&vertices, &self.edges())
    }

    /// A name based on `base` that is not used in this game.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        (2..)
            .map(|k| format!("{base}{k}"))
            .find(|n| !self.contains(n))
            .expect("unbounded search")
    }

    pub fn to_json(&self) -> String {
        self.encode(None)
    }

    pub fn to_json_with_provenance(&self, provenance: &Provenance) -> String {
        self.encode(Some(provenance))
    }

    fn encode(&self, provenance: Option<&Provenance>) -> String {
        let doc = GameDoc {
            format: FORMAT.into(),
            vertices: self
                .vertex_list()
                .into_iter()
                .map(|(name, hatness)| VertexDoc { name, hatness })
                .collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
            provenance: provenance.cloned(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Game> {
        Ok(Game::from_json_with_provenance(text)?.0)
    }

    pub fn from_json_with_provenance(text: &str) -> Result<(Game, Option<Provenance>)> {
        let doc: GameDoc = serde_json::from_str(text)?;
        if doc.format != FORMAT {
            return Err(HatsError::Format(doc.format));
        }
        let vertices: Vec<(String, u32)> = doc
            .vertices
            .into_iter()
            .map(|v| (v.name, v.hatness))
            .collect();
        let edges: Vec<(String, String)> = doc.edges.into_iter().map(|[a, b]| (a, b)).collect();
        Ok((Game::new(&vertices, &edges)?, doc.provenance))
    }

    /// Hex SHA-256 of the canonical JSON encoding (without provenance).
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| HatsError::UnknownVertex(name.to_string()))
}

/// How a game was built: the rule, the vertices it glued on, and the operands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gluing: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operands: Vec<Provenance>,
}

impl Provenance {
    pub fn leaf(rule: impl Into<String>) -> Self {
        Provenance {
            rule: rule.into(),
            gluing: Vec::new(),
            operands: Vec::new(),
        }
    }

    pub fn node<S: AsRef<str>>(rule: &str, gluing: &[S], operands: Vec<Provenance>) -> Self {
        Provenance {
            rule: rule.to_string(),
            gluing: gluing.iter().map(|s| s.as_ref().to_string()).collect(),
            operands,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    name: String,
    hatness: u32,
}

#[derive(Serialize, Deserialize)]
struct GameDoc {
    format: String,
    vertices: Vec<VertexDoc>,
    edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

/// Mixed-radix odometer over all arrangements of a game, in lexicographic
/// order. Supports starting from an arbitrary rank so ranges can be split.
#[derive(Clone, Debug)]
pub struct Arrangements {
    radices: Vec<u32>,
    current: Vec<Color>,
    remaining: u64,
}

impl Arrangements {
    pub fn new(game: &Game) -> Result<Self> {
        let total = game.enumerable_count()?;
        Ok(Self::range_unchecked(game.hatnesses(), 0, total))
    }

    /// Arrangements with ranks in `start..end`.
    pub fn range(game: &Game, start: u64, end: u64) -> Result<Self> {
        let total = game.enumerable_count()?;
        let end = end.min(total);
        Ok(Self::range_unchecked(game.hatnesses(), start.min(end), end))
    }

    pub(crate) fn range_unchecked(radices: &[u32], start: u64, end: u64) -> Self {
        Arrangements {
            radices: radices.to_vec(),
            current: unrank(radices, start),
            remaining: end.saturating_sub(start),
        }
    }
}

impl Iterator for Arrangements {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = Arrangement(self.current.clone());
        advance(&self.radices, &mut self.current);
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

/// Colors of the arrangement with lexicographic rank `rank`.
pub fn unrank(radices: &[u32], mut rank: u64) -> Vec<Color> {
    let mut out = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        let r = radices[i] as u64;
        out[i] = (rank % r) as Color;
        rank /= r;
    }
    out
}

/// Lexicographic rank of an arrangement.
pub fn rank(radices: &[u32], colors: &[Color]) -> u64 {
    colors
        .iter()
        .zip(radices)
        .fold(0u64, |acc, (&c, &r)| acc * r as u64 + c as u64)
}

/// Steps the odometer; returns false when it wrapped around to all zeros.
pub(crate) fn advance(radices: &[u32], colors: &mut [Color]) -> bool {
    for i in (0..radices.len()).rev() {
        colors[i] += 1;
        if colors[i] < radices[i] {
            return true;
        }
        colors[i] = 0;
    }
    false
}
