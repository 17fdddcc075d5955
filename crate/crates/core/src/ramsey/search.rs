//! Exhaustive search for colorings of `K_N` with no monochromatic copy of an
//! ordered graph, and the exact Ramsey number built on it.
//!
//! Edges are colored in canonical order (all edges into vertex 1, then vertex
//! 2, ...). After each assignment only copies that use the newly colored edge
//! are looked for; any other copy would already have been caught. Colors are
//! introduced in order, which is the only symmetry removed.
//!
//! The tree is cut into prefixes of a fixed depth that depends only on the
//! instance. Workers take prefixes in parallel and the earliest prefix with a
//! free completion wins, so the answer does not depend on the worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{bit, WORD};
use crate::error::{Error, Result};
use crate::ordered_graph::{OrderedGraph, PatternPlan};
use crate::ramsey::bounds::bound_report;
use crate::ramsey::coloring::{edge_order, is_free, EdgeColoring};

pub const MAX_COLORS: u8 = 4;
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Prefix count at which the top of the tree stops being split.
const SPLIT_TARGET: usize = 256;
/// Nodes a worker counts locally before touching the shared counter.
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node limit for the whole call.
    pub budget: u64,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStats {
    pub nodes: u64,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeSearch {
    pub coloring: Option<EdgeColoring>,
    pub stats: ProofStats,
}

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
}

impl Shared {
    fn charge(&self, local: &mut u64) -> bool {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if total > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

/// One worker's partial coloring.
struct Walker<'a> {
    n: usize,
    t: u8,
    plan: &'a PatternPlan,
    edges: &'a [(usize, usize)],
    colors: Vec<u8>,
    /// `adj[c * n + x]`: neighbours of `x` in color `c + 1`.
    adj: Vec<u64>,
    used: u8,
    local_nodes: u64,
    shared: &'a Shared,
}

impl<'a> Walker<'a> {
    fn new(n: usize, t: u8, plan: &'a PatternPlan, edges: &'a [(usize, usize)], shared: &'a Shared) -> Self {
        Walker {
            n,
            t,
            plan,
            edges,
            colors: Vec::with_capacity(edges.len()),
            adj: vec![0; t as usize * n],
            used: 0,
            local_nodes: 0,
            shared,
        }
    }

    /// Colors edge number `colors.len()` with `c` if that creates no
    /// monochromatic copy; returns whether it did.
    fn push(&mut self, c: u8) -> bool {
        let (u, v) = self.edges[self.colors.len()];
        let base = (c as usize - 1) * self.n;
        self.adj[base + u] |= bit(v);
        self.adj[base + v] |= bit(u);
        let host = &self.adj[base..base + self.n];
        if self.plan.exists_through(host, self.n, u, v) {
            self.adj[base + u] &= !bit(v);
            self.adj[base + v] &= !bit(u);
            return false;
        }
        self.colors.push(c);
        self.used = self.used.max(c);
        true
    }

    fn pop(&mut self, prev_used: u8) {
        let c = self.colors.pop().expect("pop on empty prefix");
        let (u, v) = self.edges[self.colors.len()];
        let base = (c as usize - 1) * self.n;
        self.adj[base + u] &= !bit(v);
        self.adj[base + v] &= !bit(u);
        self.used = prev_used;
    }

    fn options(&self) -> u8 {
        self.t.min(self.used + 1)
    }

    fn replay(&mut self, prefix: &[u8]) -> bool {
        prefix.iter().all(|&c| self.push(c))
    }

    /// Depth-first completion in lexicographic order.
    fn complete(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes >= FLUSH_EVERY && !self.shared.charge(&mut self.local_nodes) {
            return false;
        }
        if self.colors.len() == self.edges.len() {
            return true;
        }
        let prev_used = self.used;
        for c in 1..=self.options() {
            if self.push(c) {
                if self.complete() {
                    return true;
                }
                self.pop(prev_used);
            }
            if self.shared.aborted.load(Ordering::Relaxed) {
                return false;
            }
        }
        false
    }
}

fn check_instance(n: usize, t: u8, g: &OrderedGraph) -> Result<()> {
    if t == 0 || t > MAX_COLORS {
        return Err(Error::Capacity(format!(
            "palette of {t} colors; supported 1..={MAX_COLORS}"
        )));
    }
    if n > WORD || g.n() > WORD {
        return Err(Error::Capacity(format!("at most {WORD} vertices are supported")));
    }
    Ok(())
}

/// Splits the top of the tree into prefixes, in lexicographic order, that
/// survive the incremental check.
fn split_prefixes(walker: &mut Walker<'_>) -> Vec<Vec<u8>> {
    let mut level: Vec<Vec<u8>> = vec![Vec::new()];
    let mut depth = 0;
    while depth < walker.edges.len() && level.len() < SPLIT_TARGET && !level.is_empty() {
        let mut next = Vec::new();
        for prefix in &level {
            assert!(walker.replay(prefix), "stored prefixes are free");
            let prev_used = walker.used;
            for c in 1..=walker.options() {
                if walker.push(c) {
                    next.push(walker.colors.clone());
                    walker.pop(prev_used);
                }
            }
            walker.local_nodes += 1;
            reset(walker);
        }
        level = next;
        depth += 1;
    }
    level
}

fn reset(walker: &mut Walker<'_>) {
    walker.colors.clear();
    walker.adj.fill(0);
    walker.used = 0;
}

/// Lexicographically least `t`-coloring of `K_n` with no monochromatic copy
/// of `g`, or `None` once the whole tree is exhausted.
pub fn exists_free_coloring(n: usize, t: u8, g: &OrderedGraph, config: &SearchConfig) -> Result<FreeSearch> {
    check_instance(n, t, g)?;
    let started = Instant::now();
    let stats = |nodes| ProofStats {
        nodes,
        wall_ms: started.elapsed().as_millis() as u64,
    };
    if g.edge_count() == 0 {
        // an edgeless pattern sits in every color as soon as it fits
        let coloring = (n < g.n()).then(|| EdgeColoring::uniform(n, t, 1)).transpose()?;
        return Ok(FreeSearch {
            coloring,
            stats: stats(1),
        });
    }

    let plan = PatternPlan::new(g);
    let edges = edge_order(n);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        budget: config.budget,
        aborted: AtomicBool::new(false),
    };

    let mut top = Walker::new(n, t, &plan, &edges, &shared);
    let prefixes = split_prefixes(&mut top);
    shared.charge(&mut top.local_nodes);

    let run = |prefix: &Vec<u8>| -> Option<Vec<u8>> {
        if shared.aborted.load(Ordering::Relaxed) {
            return None;
        }
        let mut w = Walker::new(n, t, &plan, &edges, &shared);
        assert!(w.replay(prefix), "stored prefixes are free");
        let found = w.complete();
        shared.charge(&mut w.local_nodes);
        found.then(|| w.colors.clone())
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let found = pool.install(|| prefixes.par_iter().find_map_first(run));

    let nodes = shared.nodes.load(Ordering::Relaxed);
    if shared.aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(config.budget));
    }
    let coloring = found
        .map(|colors| EdgeColoring::from_colors(n, t, colors))
        .transpose()?;
    Ok(FreeSearch {
        coloring,
        stats: stats(nodes),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RamseyStatus {
    Exact { value: usize },
    Bounded { lo: usize, hi: usize },
    LowerOnly { lo: usize },
}

impl RamseyStatus {
    pub fn lower(&self) -> usize {
        match *self {
            RamseyStatus::Exact { value } => value,
            RamseyStatus::Bounded { lo, .. } | RamseyStatus::LowerOnly { lo } => lo,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            RamseyStatus::Exact { value } => Some(value),
            _ => None,
        }
    }
}

/// Outcome of [`ramsey_exact`]. The witness is a coloring on `lower - 1`
/// vertices with no monochromatic copy of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyResult {
    pub graph: OrderedGraph,
    pub t: u8,
    pub status: RamseyStatus,
    pub witness: EdgeColoring,
    pub proof_stats: ProofStats,
}

impl RamseyResult {
    /// Re-checks the witness from scratch.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.witness.n() + 1 == self.status.lower()
            && self.witness.t() == self.t
            && is_free(&self.witness, &self.graph)?)
    }
}

/// `R_t(g)` by running [`exists_free_coloring`] for `N = |V(g)|, |V(g)|+1, ...`
/// up to `n_max`. The budget covers the whole run.
pub fn ramsey_exact(g: &OrderedGraph, t: u8, n_max: usize, config: &SearchConfig) -> Result<RamseyResult> {
    check_instance(n_max.min(WORD), t, g)?;
    let started = Instant::now();
    // below |V(g)| every coloring is free
    let mut witness = EdgeColoring::uniform(g.n() - 1, t, 1)?;
    let mut nodes = 0u64;
    for n in g.n()..=n_max {
        let remaining = SearchConfig {
            budget: config.budget.saturating_sub(nodes),
            ..*config
        };
        let outcome = exists_free_coloring(n, t, g, &remaining)?;
        nodes += outcome.stats.nodes;
        match outcome.coloring {
            Some(c) => witness = c,
            None => {
                return Ok(RamseyResult {
                    graph: g.clone(),
                    t,
                    status: RamseyStatus::Exact { value: n },
                    witness,
                    proof_stats: ProofStats {
                        nodes,
                        wall_ms: started.elapsed().as_millis() as u64,
                    },
                })
            }
        }
    }
    let lo = witness.n() + 1;
    let status = match bound_report(g, t).best_upper() {
        Some(hi) if hi >= lo => RamseyStatus::Bounded { lo, hi },
        _ => RamseyStatus::LowerOnly { lo },
    };
    Ok(RamseyResult {
        graph: g.clone(),
        t,
        status,
        witness,
        proof_stats: ProofStats {
            nodes,
            wall_ms: started.elapsed().as_millis() as u64,
        },
    })
}
