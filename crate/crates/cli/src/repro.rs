//! Self-contained reproduction checks, one per published claim. Everything is
//! rebuilt from generators; the cache is never consulted.

use ordered_ramsey::block_coloring::{
    exhaustive_triangular_search, expand, figure3, figure4a, figure4b, pattern_report, tcolor_grid, BlockColoring,
    BlockPattern, TcolorVariant,
};
use ordered_ramsey::matrix_patterns::{
    derive_minimalist, extremal_number, is_minimalist_window, sporadic_3x3, ZeroOneMatrix,
};
use ordered_ramsey::ordered_graph::{interval_coloring, is_stitched};
use ordered_ramsey::ramsey::{
    balko_alt_expression, bound_report, es_coloring, is_free, prop5_expression, ramsey_exact, threshold_crossing,
    threshold_nested, BoundKind, BoundSource, SearchConfig,
};
use ordered_ramsey::{EdgeColoring, OrderedGraph, RamseyStatus};
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const IDS: [&str; 10] = [
    "thm1",
    "cor1",
    "cor2",
    "cor3",
    "prop3",
    "prop4",
    "prop5",
    "remark",
    "es",
    "minimalist3x3",
];

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub id: String,
    pub verdict: &'static str,
    pub evidence: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

struct Log {
    ok: bool,
    lines: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log {
            ok: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.lines.push(format!("{}: {what}", if ok { "ok" } else { "FAILED" }));
        self.ok &= ok;
    }
}

pub fn run(id: &str, config: &SearchConfig) -> CliResult<Report> {
    let mut log = Log::new();
    match id {
        "thm1" => thm1(&mut log)?,
        "cor1" => cor1(&mut log)?,
        "cor2" => cor2(&mut log)?,
        "cor3" => cor3(&mut log)?,
        "prop3" => prop3(&mut log, config)?,
        "prop4" => prop4(&mut log, config)?,
        "prop5" => prop5(&mut log, config)?,
        "remark" => remark(&mut log)?,
        "es" => es(&mut log, config)?,
        "minimalist3x3" => minimalist(&mut log)?,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown theorem id {id:?}; expected one of {}",
                IDS.join(", ")
            )))
        }
    }
    Ok(Report {
        id: id.to_string(),
        verdict: if log.ok { "PASS" } else { "FAIL" },
        evidence: log.lines,
    })
}

/// Every stitched graph with parts `(3, 3)` whose core matrix has the given
/// cells set.
fn stitched_33(required: &[(usize, usize)]) -> Vec<OrderedGraph> {
    (0u32..1 << 9)
        .filter_map(|bits| {
            let mut core = ZeroOneMatrix::zeros(3, 3).ok()?;
            for cell in 0..9 {
                core.set(cell / 3, cell % 3, bits >> cell & 1 == 1);
            }
            if !required.iter().all(|&(i, j)| core.get(i, j)) {
                return None;
            }
            let g = OrderedGraph::from_core_matrix(&core);
            (is_stitched(&g) && interval_coloring(&g).part_sizes() == [3, 3]).then_some(g)
        })
        .collect()
}

fn avoids(log: &mut Log, name: &str, grid: &BlockColoring, ids: &[u8], exempt: bool) {
    let report = pattern_report(grid, exempt);
    log.check(
        ids.iter().all(|id| report.contains(id)),
        format!("{name} avoids patterns {ids:?} (report {report:?})"),
    );
}

fn free_of_all(log: &mut Log, name: &str, c: &EdgeColoring, graphs: &[OrderedGraph]) -> CliResult<()> {
    let mut free = 0;
    for g in graphs {
        if is_free(c, g)? {
            free += 1;
        }
    }
    log.check(
        free == graphs.len() && !graphs.is_empty(),
        format!("{name} on K_{} is free of {free}/{} graphs", c.n(), graphs.len()),
    );
    Ok(())
}

fn thm1(log: &mut Log) -> CliResult<()> {
    avoids(log, "figure 3", &figure3(), &[1, 2, 3, 4], true);
    let c = expand(&figure3(), 2)?;
    log.check(
        is_free(&c, &OrderedGraph::alternating_path(6))?,
        "expanded figure 3 is free of P6alt",
    );
    free_of_all(log, "expanded figure 3", &c, &stitched_33(&[]))?;
    log.check(c.n() + 1 == 9, "R >= 4r+1 = 9 for r = 2");
    Ok(())
}

fn cor1(log: &mut Log) -> CliResult<()> {
    avoids(log, "figure 4a", &figure4a(), &[3, 4], false);
    let c = expand(&figure4a(), 2)?;
    log.check(
        is_free(&c, &OrderedGraph::alternating_path(6))?,
        "expanded figure 4a is free of P6alt",
    );
    free_of_all(log, "expanded figure 4a", &c, &stitched_33(&[(0, 2), (2, 0)]))?;
    log.check(c.n() + 1 == 11, "R >= 5r+1 = 11 for r = 2");
    Ok(())
}

fn cor2(log: &mut Log) -> CliResult<()> {
    avoids(log, "figure 4b", &figure4b(), &[2], false);
    let c = expand(&figure4b(), 2)?;
    log.check(
        is_free(&c, &OrderedGraph::crossing_pair_stitched(3, 3))?,
        "expanded figure 4b is free of the stitched crossing pair (3,3)",
    );
    free_of_all(log, "expanded figure 4b", &c, &stitched_33(&[(0, 0), (2, 2), (2, 0)]))?;
    log.check(c.n() + 1 == 11, "R >= 5r+1 = 11 for r = 2");
    Ok(())
}

fn cor3(log: &mut Log) -> CliResult<()> {
    let cases = [
        (TcolorVariant::G1, OrderedGraph::alternating_path(4), "P4alt"),
        (TcolorVariant::G2, OrderedGraph::alternating_path(4), "P4alt"),
        (
            TcolorVariant::G3,
            OrderedGraph::crossing_pair_stitched(2, 2),
            "stitched crossing (2,2)",
        ),
    ];
    for t in 3..=4 {
        for (variant, g, name) in &cases {
            let grid = tcolor_grid(*variant, t)?;
            let (ids, exempt) = variant.avoids();
            avoids(log, &format!("{variant:?} grid, t = {t}"), &grid, ids, exempt);
            let c = expand(&grid, 1)?;
            log.check(
                is_free(&c, g)?,
                format!("{variant:?}, t = {t}: K_{} free of {name}, R_t >= {}", c.n(), c.n() + 1),
            );
        }
    }
    Ok(())
}

fn exact(log: &mut Log, name: &str, g: &OrderedGraph, want: usize, config: &SearchConfig) -> CliResult<()> {
    let r = ramsey_exact(g, 2, want + 1, config)?;
    let verified = r.verify()?;
    log.check(
        r.status.exact() == Some(want) && verified,
        format!(
            "R({name}) = {} (expected {want}), witness on {} vertices verified: {verified}, {} nodes",
            describe(&r.status),
            r.witness.n(),
            r.proof_stats.nodes
        ),
    );
    Ok(())
}

fn describe(status: &RamseyStatus) -> String {
    match *status {
        RamseyStatus::Exact { value } => value.to_string(),
        RamseyStatus::Bounded { lo, hi } => format!("between {lo} and {hi}"),
        RamseyStatus::LowerOnly { lo } => format!("at least {lo}"),
    }
}

fn prop3(log: &mut Log, config: &SearchConfig) -> CliResult<()> {
    for (m, n) in [(2, 2), (2, 3)] {
        let g = OrderedGraph::nested_pair(m, n);
        exact(log, &format!("nested({m},{n})"), &g, 2 * m + 2 * n - 2, config)?;
        let c = threshold_nested(m, n)?;
        log.check(is_free(&c, &g)?, format!("threshold coloring of K_{} is free", c.n()));
    }
    Ok(())
}

fn prop4(log: &mut Log, config: &SearchConfig) -> CliResult<()> {
    for (m, n) in [(2, 2), (3, 2)] {
        let g = OrderedGraph::crossing_pair(m, n);
        exact(log, &format!("crossing({m},{n})"), &g, m + n + m.max(n) - 1, config)?;
        let c = threshold_crossing(m, n)?;
        log.check(is_free(&c, &g)?, format!("threshold coloring of K_{} is free", c.n()));
    }
    Ok(())
}

fn prop5(log: &mut Log, config: &SearchConfig) -> CliResult<()> {
    let g = OrderedGraph::alternating_path(4);
    let report = bound_report(&g, 2);
    let upper = report.find(BoundSource::Prop5, BoundKind::Upper);
    log.check(
        upper.map(|e| e.value) == Some(9),
        format!("upper bound for P4alt: {:?}", upper.map(|e| (e.value, &e.note))),
    );
    let r = ramsey_exact(&g, 2, 9, config)?;
    log.check(
        r.verify()? && r.status.exact().is_some_and(|v| v <= 9),
        format!("R(P4alt) = {} is within the bound", describe(&r.status)),
    );
    let worst = (4..=200)
        .step_by(2)
        .find(|&n| prop5_expression(2, n / 2, n / 2) < balko_alt_expression(n));
    log.check(
        worst.is_none(),
        format!("general bound >= alternating-path bound for even n in 4..200 (first failure {worst:?})"),
    );
    Ok(())
}

fn remark(log: &mut Log) -> CliResult<()> {
    use BlockPattern::*;
    let cases: [(usize, &[BlockPattern], bool, bool); 6] = [
        (6, &[P2], false, false),
        (6, &[P3, P4], false, false),
        (5, &[P2], false, true),
        (5, &[P3, P4], false, true),
        (5, &BlockPattern::ALL, true, false),
        (4, &BlockPattern::ALL, true, true),
    ];
    for (k, forbidden, exempt, want) in cases {
        let found = exhaustive_triangular_search(k, forbidden, exempt, 2)?;
        let ids: Vec<u8> = forbidden.iter().map(|p| p.id()).collect();
        log.check(
            found.is_some() == want,
            format!(
                "k = {k}, avoiding {ids:?}{}: {}",
                if exempt { " (diagonal exempt)" } else { "" },
                match &found {
                    Some(b) => format!("found {:?}", b.rows()),
                    None => "none (exhausted)".into(),
                }
            ),
        );
    }
    Ok(())
}

fn es(log: &mut Log, config: &SearchConfig) -> CliResult<()> {
    exact(
        log,
        "monotone path on 3 vertices",
        &OrderedGraph::monotone_path(3),
        5,
        config,
    )?;
    let c = es_coloring(4)?;
    log.check(
        is_free(&c, &OrderedGraph::monotone_path(4))?,
        format!("K_{} coloring free of the monotone path on 4 vertices, R >= 10", c.n()),
    );
    Ok(())
}

fn minimalist(log: &mut Log) -> CliResult<()> {
    let a = sporadic_3x3();
    for m in 3..=5 {
        for n in 3..=5 {
            let ex = extremal_number(&a, m, n)?;
            log.check(
                ex.verify() && ex.value == 2 * m + 2 * n - 4,
                format!("ex({m},{n}) = {} (expected {})", ex.value, 2 * m + 2 * n - 4),
            );
        }
    }
    log.check(
        derive_minimalist(&a, 1_000_000)?.is_none(),
        "no chain of elementary operations reaches the 3x3 matrix",
    );
    let b = ZeroOneMatrix::from_rows(&[&[0, 1], &[1, 1]])?;
    let d = derive_minimalist(&b, 1_000_000)?;
    let certified = d.as_ref().is_some_and(|d| d.certifies(&b));
    let window = is_minimalist_window(&b, 5, 5)?;
    log.check(
        certified && window.holds,
        format!(
            "[[0,1],[1,1]] derived in {:?} operations, window (5,5) holds: {}",
            d.map(|d| d.ops.len()),
            window.holds
        ),
    );
    Ok(())
}
