use serde::{Deserialize, Serialize};

use crate::bits::{bit, WORD};
use crate::error::{Error, Result};
use crate::ordered_graph::{Embedding, OrderedGraph, PatternPlan};

/// Position of edge `(u, v)`, `u < v`, in the canonical edge order: all edges
/// into vertex 1, then all edges into vertex 2, and so on.
#[inline]
pub fn edge_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

/// Edges of `K_n` in canonical order.
pub fn edge_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// A total coloring of the edges of the ordered complete graph `K_n` with
/// colors `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeColoringJson", into = "EdgeColoringJson")]
pub struct EdgeColoring {
    n: usize,
    t: u8,
    colors: Vec<u8>,
}

/// Wire form: colors listed in canonical edge order, `c_01, c_02, c_12, c_03, ...`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeColoringJson {
    pub n: usize,
    pub t: u8,
    pub colors: Vec<u8>,
}

impl TryFrom<EdgeColoringJson> for EdgeColoring {
    type Error = Error;

    fn try_from(raw: EdgeColoringJson) -> Result<Self> {
        EdgeColoring::from_colors(raw.n, raw.t, raw.colors)
    }
}

impl From<EdgeColoring> for EdgeColoringJson {
    fn from(c: EdgeColoring) -> Self {
        EdgeColoringJson {
            n: c.n,
            t: c.t,
            colors: c.colors,
        }
    }
}

impl EdgeColoring {
    pub fn from_colors(n: usize, t: u8, colors: Vec<u8>) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if colors.len() != expected {
            return Err(Error::InvalidColoring(format!(
                "K_{n} has {expected} edges but {} colors were given",
                colors.len()
            )));
        }
        if t == 0 {
            return Err(Error::InvalidColoring("palette must be non-empty".into()));
        }
        if let Some(bad) = colors.iter().find(|&&c| c == 0 || c > t) {
            return Err(Error::InvalidColoring(format!("color {bad} outside 1..={t}")));
        }
        Ok(EdgeColoring { n, t, colors })
    }

    pub fn from_fn(n: usize, t: u8, mut color: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let colors = edge_order(n).into_iter().map(|(u, v)| color(u, v)).collect();
        Self::from_colors(n, t, colors)
    }

    pub fn uniform(n: usize, t: u8, color: u8) -> Result<Self> {
        Self::from_fn(n, t, |_, _| color)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u8 {
        self.t
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Color of the edge between two distinct vertices, in either order.
    pub fn color(&self, u: usize, v: usize) -> u8 {
        self.colors[edge_index(u.min(v), u.max(v))]
    }

    /// Adjacency words of the spanning subgraph in one color.
    pub fn class_adjacency(&self, color: u8) -> Result<Vec<u64>> {
        if self.n > WORD {
            return Err(Error::Capacity(format!("K_{} exceeds the {WORD}-vertex limit", self.n)));
        }
        let mut adj = vec![0u64; self.n];
        for ((u, v), &c) in edge_order(self.n).into_iter().zip(&self.colors) {
            if c == color {
                adj[u] |= bit(v);
                adj[v] |= bit(u);
            }
        }
        Ok(adj)
    }

    /// The spanning subgraph in one color as an ordered graph.
    pub fn class_graph(&self, color: u8) -> Result<OrderedGraph> {
        let edges = edge_order(self.n)
            .into_iter()
            .zip(&self.colors)
            .filter(|&(_, &c)| c == color)
            .map(|(e, _)| e);
        OrderedGraph::new(self.n.max(1), edges)
    }

    /// Relabels colors: color `c` becomes `perm[c - 1]`.
    pub fn permute_colors(&self, perm: &[u8]) -> Result<Self> {
        let colors = self.colors.iter().map(|&c| perm[c as usize - 1]).collect();
        Self::from_colors(self.n, self.t, colors)
    }

    /// Coloring induced on a strictly increasing vertex subset.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        Self::from_fn(vertices.len(), self.t, |a, b| self.color(vertices[a], vertices[b]))
    }

    /// The coloring read right to left.
    pub fn reversed(&self) -> Self {
        let last = self.n.saturating_sub(1);
        Self::from_fn(self.n, self.t, |u, v| self.color(last - v, last - u)).expect("same palette and size")
    }
}

/// Lexicographically least copy of `g` in the given color class.
pub fn mono_copy(c: &EdgeColoring, g: &OrderedGraph, color: u8) -> Result<Option<Embedding>> {
    let adj = c.class_adjacency(color)?;
    if g.n() > WORD {
        return Ok(None);
    }
    Ok(PatternPlan::new(g).find(&adj, c.n()).map(|map| Embedding { map }))
}

/// First color (in increasing order) holding a copy of `g`, with the copy.
pub fn find_mono_copy(c: &EdgeColoring, g: &OrderedGraph) -> Result<Option<(u8, Embedding)>> {
    for color in 1..=c.t() {
        if let Some(e) = mono_copy(c, g, color)? {
            return Ok(Some((color, e)));
        }
    }
    Ok(None)
}

/// True when no color class contains `g`.
pub fn is_free(c: &EdgeColoring, g: &OrderedGraph) -> Result<bool> {
    Ok(find_mono_copy(c, g)?.is_none())
}
