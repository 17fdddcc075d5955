//! Ordered graphs: interval colorings, the stitched property, order-preserving
//! containment and core matrices of 2-ichromatic graphs.
//!
//! Vertices are the positions `0..n` of the linear order. An edge is stored as
//! `(u, v)` with `u < v`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, range_mask, WORD};
use crate::error::{Error, Result};
use crate::matrix_patterns::ZeroOneMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct OrderedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Wire form: `{"n": 4, "edges": [[0, 3], [1, 2]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for OrderedGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        OrderedGraph::new(raw.n, pairs)
    }
}

impl From<OrderedGraph> for GraphJson {
    fn from(g: OrderedGraph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// Checks a raw vertex count and edge list against the ordered-graph
/// invariants, reporting the first violation in input order.
pub fn validate(n: usize, edges: &[(usize, usize)]) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut seen = BTreeSet::new();
    for &(u, v) in edges {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u > v {
            return Err(Error::UnorderedEdge(u, v));
        }
        if !seen.insert((u, v)) {
            return Err(Error::DuplicateEdge(u, v));
        }
    }
    Ok(())
}

impl OrderedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<_> = edges.into_iter().collect();
        validate(n, &edges)?;
        edges.sort_unstable();
        Ok(OrderedGraph { n, edges })
    }

    /// Builds a graph from an edge list that may repeat edges or list them
    /// in either orientation. Loops are still rejected.
    fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        OrderedGraph::new(n, set).expect("generator produced an invalid graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Adjacency rows as bitsets; only defined for `n <= 64`.
    pub fn adjacency_words(&self) -> Result<Vec<u64>> {
        if self.n > WORD {
            return Err(Error::Capacity(format!(
                "graph on {} vertices exceeds the {WORD}-vertex limit",
                self.n
            )));
        }
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(adj)
    }

    /// The same graph read right to left.
    pub fn reversed(&self) -> Self {
        let last = self.n - 1;
        Self::from_pairs(self.n, self.edges.iter().map(|&(u, v)| (last - v, last - u)))
    }

    /// Rebuilds a 2-ichromatic graph from its core matrix: rows are the first
    /// part, columns the second.
    pub fn from_core_matrix(core: &ZeroOneMatrix) -> Self {
        let m = core.rows();
        Self::from_pairs(m + core.cols(), core.ones().map(|(i, j)| (i, m + j)))
    }

    pub fn monotone_path(k: usize) -> Self {
        Self::from_pairs(k.max(1), (1..k).map(|v| (v - 1, v)))
    }

    /// Path visiting `0, k-1, 1, k-2, ...`.
    pub fn alternating_path(k: usize) -> Self {
        let k = k.max(1);
        let mut order = Vec::with_capacity(k);
        let (mut lo, mut hi) = (0usize, k - 1);
        while lo <= hi {
            order.push(lo);
            if lo != hi {
                order.push(hi);
            }
            lo += 1;
            if hi == 0 {
                break;
            }
            hi -= 1;
        }
        Self::from_pairs(k, order.windows(2).map(|w| (w[0], w[1])))
    }

    /// Parts of sizes `m` and `n`; one edge joins the outermost vertices and
    /// one joins the innermost vertices.
    pub fn nested_pair(m: usize, n: usize) -> Self {
        Self::from_pairs(m + n, [(0, m + n - 1), (m - 1, m)])
    }

    /// Parts of sizes `m` and `n`; one edge joins the first vertices of the
    /// parts and one joins the last vertices.
    pub fn crossing_pair(m: usize, n: usize) -> Self {
        Self::from_pairs(m + n, [(0, m), (m - 1, m + n - 1)])
    }

    /// `crossing_pair` plus the edge from the last vertex of the first part
    /// to the first vertex of the second part.
    pub fn crossing_pair_stitched(m: usize, n: usize) -> Self {
        Self::from_pairs(m + n, [(0, m), (m - 1, m + n - 1), (m - 1, m)])
    }

    /// `nested_pair` plus the edge from the first vertex of the first part to
    /// the first vertex of the second part, which makes it stitched.
    pub fn nested_pair_stitched(m: usize, n: usize) -> Self {
        Self::from_pairs(m + n, [(0, m + n - 1), (m - 1, m), (0, m)])
    }

    pub fn complete(k: usize) -> Self {
        let k = k.max(1);
        Self::from_pairs(k, (0..k).flat_map(|v| (0..v).map(move |u| (u, v))))
    }

    pub fn edgeless(k: usize) -> Self {
        Self::from_pairs(k.max(1), [])
    }

    /// Connected-component label of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.neighbors();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    fn interval_is_independent(&self, start: usize, end: usize) -> bool {
        !self.edges.iter().any(|&(u, v)| start <= u && v < end)
    }
}

/// A partition of `0..n` into consecutive parts, given by the start of each part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalColoring {
    pub boundaries: Vec<usize>,
    pub n: usize,
}

impl IntervalColoring {
    pub fn part_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Half-open ranges of the parts.
    pub fn parts(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.boundaries.len());
        for (i, &start) in self.boundaries.iter().enumerate() {
            let end = self.boundaries.get(i + 1).copied().unwrap_or(self.n);
            out.push((start, end));
        }
        out
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts().iter().map(|&(a, b)| b - a).collect()
    }
}

/// Minimum interval coloring: grow the current part until the next vertex has
/// a neighbour inside it.
pub fn interval_coloring(g: &OrderedGraph) -> IntervalColoring {
    let adj = g.neighbors();
    let mut boundaries = vec![0];
    let mut start = 0;
    for (v, nb) in adj.iter().enumerate().skip(1) {
        if nb.iter().any(|&u| start <= u && u < v) {
            boundaries.push(v);
            start = v;
        }
    }
    IntervalColoring { boundaries, n: g.n }
}

pub fn interval_chromatic(g: &OrderedGraph) -> usize {
    interval_coloring(g).part_count()
}

/// True when the first and last vertices of every part of the minimum
/// interval coloring lie in one connected component.
pub fn is_stitched(g: &OrderedGraph) -> bool {
    let label = g.components();
    let coloring = interval_coloring(g);
    let mut ends = coloring.parts().into_iter().flat_map(|(a, b)| [a, b - 1]);
    let first = ends.next().map(|v| label[v]);
    ends.all(|v| Some(label[v]) == first)
}

/// Every split position `s` such that `0..s` and `s..n` are both independent.
pub fn valid_splits(g: &OrderedGraph) -> Vec<usize> {
    (1..g.n)
        .filter(|&s| g.interval_is_independent(0, s) && g.interval_is_independent(s, g.n))
        .collect()
}

/// Part sizes `(m, n)` of a 2-ichromatic graph.
///
/// Without a split the interval 2-coloring must be unique, which always holds
/// for stitched graphs. An explicit split is validated instead.
pub fn parts_2ichromatic(g: &OrderedGraph, split: Option<usize>) -> Result<(usize, usize)> {
    let chi = interval_chromatic(g);
    if chi != 2 {
        return Err(Error::NotTwoIchromatic(chi));
    }
    match split {
        Some(s) => {
            if s == 0 || s >= g.n || !g.interval_is_independent(0, s) || !g.interval_is_independent(s, g.n) {
                return Err(Error::InvalidSplit(s));
            }
            Ok((s, g.n - s))
        }
        None => {
            let splits = valid_splits(g);
            match splits.as_slice() {
                [s] => Ok((*s, g.n - *s)),
                _ => Err(Error::AmbiguousSplit(splits)),
            }
        }
    }
}

/// The `m x n` matrix of edges between the two parts.
pub fn core_matrix(g: &OrderedGraph, split: Option<usize>) -> Result<ZeroOneMatrix> {
    let (m, n) = parts_2ichromatic(g, split)?;
    let mut core = ZeroOneMatrix::zeros(m, n)?;
    for &(u, v) in g.edges() {
        // both parts are independent, so every edge crosses the split
        core.set(u, v - m, true);
    }
    Ok(core)
}

/// An order-preserving, edge-preserving map from pattern vertices to host
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks the embedding invariants against concrete graphs.
    pub fn is_valid(&self, host: &OrderedGraph, pattern: &OrderedGraph) -> bool {
        self.map.len() == pattern.n()
            && self.map.windows(2).all(|w| w[0] < w[1])
            && self.map.last().is_none_or(|&v| v < host.n())
            && pattern
                .edges()
                .iter()
                .all(|&(u, v)| host.has_edge(self.map[u], self.map[v]))
    }

    /// `self` after `inner`: maps the pattern of `inner` into the host of `self`.
    pub fn compose(&self, inner: &Embedding) -> Embedding {
        Embedding {
            map: inner.map.iter().map(|&v| self.map[v]).collect(),
        }
    }
}

/// Precomputed search order for embedding one pattern into many hosts.
#[derive(Debug, Clone)]
pub(crate) struct PatternPlan {
    k: usize,
    /// Neighbours of each pattern vertex that come before it.
    earlier: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl PatternPlan {
    pub(crate) fn new(pattern: &OrderedGraph) -> Self {
        let mut earlier = vec![Vec::new(); pattern.n()];
        for &(u, v) in pattern.edges() {
            earlier[v].push(u);
        }
        PatternPlan {
            k: pattern.n(),
            earlier,
            edges: pattern.edges().to_vec(),
        }
    }

    /// Lexicographically least embedding into the host given by adjacency
    /// words over `host_n` vertices.
    pub(crate) fn find(&self, host: &[u64], host_n: usize) -> Option<Vec<usize>> {
        self.find_pinned(host, host_n, &[])
    }

    /// Like [`find`](Self::find) but with some pattern vertices pinned to
    /// host vertices. Pins must be sorted by pattern vertex.
    pub(crate) fn find_pinned(&self, host: &[u64], host_n: usize, pins: &[(usize, usize)]) -> Option<Vec<usize>> {
        if self.k > host_n {
            return None;
        }
        let mut map = [0usize; WORD];
        if self.extend(host, host_n, pins, 0, &mut map) {
            Some(map[..self.k].to_vec())
        } else {
            None
        }
    }

    /// Whether some copy maps pattern edge `(a, b)` onto host edge `(u, v)`
    /// for some pattern edge; the caller guarantees `(u, v)` is a host edge.
    pub(crate) fn exists_through(&self, host: &[u64], host_n: usize, u: usize, v: usize) -> bool {
        let mut map = [0usize; WORD];
        for &(a, b) in &self.edges {
            if a > u || b - a > v - u || self.k - b > host_n - v {
                continue;
            }
            if self.extend(host, host_n, &[(a, u), (b, v)], 0, &mut map) {
                return true;
            }
        }
        false
    }

    fn extend(&self, host: &[u64], host_n: usize, pins: &[(usize, usize)], i: usize, map: &mut [usize; WORD]) -> bool {
        if i == self.k {
            return true;
        }
        let lo = if i == 0 { 0 } else { map[i - 1] + 1 };
        let mut cand = range_mask(lo, host_n - (self.k - i));
        for &(f, q) in pins {
            if f == i {
                cand &= bit(q);
            } else if f > i {
                // room for the vertices between i and the pinned one
                match q.checked_sub(f - i) {
                    Some(hi) => cand &= range_mask(0, hi),
                    None => return false,
                }
            }
        }
        for &j in &self.earlier[i] {
            cand &= host[map[j]];
        }
        for p in bits::ones(cand) {
            map[i] = p;
            if self.extend(host, host_n, pins, i + 1, map) {
                return true;
            }
        }
        false
    }
}

/// Lexicographically least embedding of `pattern` into `host`, if any.
pub fn contains(host: &OrderedGraph, pattern: &OrderedGraph) -> Result<Option<Embedding>> {
    let adj = host.adjacency_words()?;
    if pattern.n() > WORD {
        return Ok(None);
    }
    Ok(PatternPlan::new(pattern)
        .find(&adj, host.n())
        .map(|map| Embedding { map }))
}
