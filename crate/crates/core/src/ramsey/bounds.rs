//! Closed-form bounds on `R_t(G)` whose hypotheses are checked against the
//! graph before they are reported.

use serde::{Deserialize, Serialize};

use crate::matrix_patterns::{derive_minimalist, is_minimalist_window, ZeroOneMatrix};
use crate::ordered_graph::{core_matrix, interval_chromatic, is_stitched, parts_2ichromatic, OrderedGraph};

/// Step limit for the derivation search used as minimalist evidence.
const DERIVE_STEPS: usize = 200_000;
/// Window for the fallback minimalist check.
const WINDOW: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundSource {
    Thm1,
    Cor1,
    Cor2,
    #[serde(rename = "Cor3-1")]
    Cor3Stitched,
    #[serde(rename = "Cor3-2")]
    Cor3Nested,
    #[serde(rename = "Cor3-3")]
    Cor3Corners,
    Prop3,
    Prop4,
    Prop5,
    #[serde(rename = "ES-monotone")]
    EsMonotone,
    #[serde(rename = "Balko-alt")]
    BalkoAlt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub source: BoundSource,
    pub kind: BoundKind,
    pub value: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omitted {
    pub source: BoundSource,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub t: u8,
    pub entries: Vec<BoundEntry>,
    pub omitted: Vec<Omitted>,
}

impl BoundReport {
    pub fn best_lower(&self) -> Option<usize> {
        self.values(BoundKind::Lower).max()
    }

    pub fn best_upper(&self) -> Option<usize> {
        self.values(BoundKind::Upper).min()
    }

    pub fn find(&self, source: BoundSource, kind: BoundKind) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.source == source && e.kind == kind)
    }

    fn values(&self, kind: BoundKind) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().filter(move |e| e.kind == kind).map(|e| e.value)
    }

    fn push(&mut self, source: BoundSource, kind: BoundKind, value: usize, note: impl Into<String>) {
        self.entries.push(BoundEntry {
            source,
            kind,
            value,
            note: note.into(),
        });
    }

    fn skip(&mut self, source: BoundSource, reason: impl Into<String>) {
        self.omitted.push(Omitted {
            source,
            reason: reason.into(),
        });
    }

    fn exact(&mut self, source: BoundSource, value: usize, note: &str) {
        self.push(source, BoundKind::Lower, value, note);
        self.push(source, BoundKind::Upper, value, note);
    }
}

/// `t(n+m-2) + sqrt(t^2 (n+m-2)^2 + 2t(3(n+m) - 4 - 2mn))`, the real-valued
/// bound for minimalist graphs with parts of sizes `m` and `n`.
pub fn prop5_expression(t: u8, m: usize, n: usize) -> f64 {
    let (t, m, n) = (t as f64, m as f64, n as f64);
    let s = n + m - 2.0;
    t * s + (t * t * s * s + 2.0 * t * (3.0 * (n + m) - 4.0 - 2.0 * m * n)).sqrt()
}

/// Integer upper bound on `R_t` from the counting argument behind
/// [`prop5_expression`].
///
/// A free coloring on `N` vertices satisfies
/// `N^2 - 1 <= 2t(n+m-2) N + 2t(3(n+m) - 4 - 2mn)`, so
/// `N <= t(n+m-2) + sqrt(D)` with `D = t^2(n+m-2)^2 + 2t(3(n+m)-4-2mn) + 1`
/// and `R_t <= t(n+m-2) + isqrt(D) + 1`. Keeping the `+1` inside `D` matters
/// only for tiny parts; for a single edge it is the difference between the
/// correct `R <= 2` and an unsound `R <= 1`.
pub fn prop5_upper(t: u8, m: usize, n: usize) -> Option<usize> {
    let (t, m, n) = (t as i64, m as i64, n as i64);
    let half = t * (n + m - 2);
    let disc = half * half + 2 * t * (3 * (n + m) - 4 - 2 * m * n) + 1;
    if disc < 0 {
        return None;
    }
    Some((half + (disc as u64).isqrt() as i64 + 1) as usize)
}

/// `2n - 4 + sqrt(2n^2 - 8n + 11)` for the alternating path on `n` vertices.
pub fn balko_alt_expression(n: usize) -> f64 {
    let n = n as f64;
    2.0 * n - 4.0 + (2.0 * n * n - 8.0 * n + 11.0).sqrt()
}

/// Integer form of [`balko_alt_expression`], read like [`prop5_upper`] as a
/// bound on the size of a free coloring: `floor(expr) + 1`.
pub fn balko_alt_upper(n: usize) -> usize {
    balko_alt_expression(n).floor() as usize + 1
}

/// Minimalist evidence for a core matrix, strongest first.
fn minimalist_evidence(core: &ZeroOneMatrix) -> Result<String, String> {
    if let Ok(Some(d)) = derive_minimalist(core, DERIVE_STEPS) {
        return Ok(format!(
            "minimalist by a {}-step elementary-operation derivation",
            d.ops.len()
        ));
    }
    if core.rows() > WINDOW || core.cols() > WINDOW {
        return Err(format!(
            "core matrix {}x{} has no derivation and exceeds the {WINDOW}x{WINDOW} check window",
            core.rows(),
            core.cols()
        ));
    }
    match is_minimalist_window(core, WINDOW, WINDOW) {
        Ok(w) if w.holds => Ok(format!(
            "minimalist evidence: extremal numbers match the formula on the {WINDOW}x{WINDOW} window (not a proof)"
        )),
        Ok(w) => Err(format!("core matrix is not minimalist: {:?}", w.counterexample)),
        Err(e) => Err(e.to_string()),
    }
}

/// Every bound whose hypotheses `g` satisfies, with the reason each other
/// source was left out.
pub fn bound_report(g: &OrderedGraph, t: u8) -> BoundReport {
    use BoundSource::*;
    let mut report = BoundReport {
        t,
        entries: Vec::new(),
        omitted: Vec::new(),
    };
    let two = t == 2;

    if *g == OrderedGraph::monotone_path(g.n()) && g.n() >= 2 {
        if two {
            let k = g.n();
            report.exact(EsMonotone, (k - 1) * (k - 1) + 1, "monotone path: (k-1)^2 + 1");
        } else {
            report.skip(EsMonotone, "two colors only");
        }
    }

    let chi = interval_chromatic(g);
    let two_ichromatic = [
        Thm1,
        Cor1,
        Cor2,
        Cor3Stitched,
        Cor3Nested,
        Cor3Corners,
        Prop3,
        Prop4,
        Prop5,
        BalkoAlt,
    ];
    if chi != 2 {
        for s in two_ichromatic {
            report.skip(s, format!("interval chromatic number is {chi}, not 2"));
        }
        return report;
    }
    let (m, n) = match parts_2ichromatic(g, None) {
        Ok(p) => p,
        Err(e) => {
            for s in two_ichromatic {
                report.skip(s, format!("parts are not determined: {e}"));
            }
            return report;
        }
    };
    let r = m.min(n) - 1;
    let stitched = is_stitched(g);
    let total = m + n;
    let outer_inner = g.has_edge(0, total - 1) && g.has_edge(m - 1, m);
    let three_corners = g.has_edge(0, m) && g.has_edge(m - 1, total - 1) && g.has_edge(m - 1, m);
    let parts = format!("parts ({m}, {n}), r = {r}");

    emit(
        &mut report,
        two,
        Thm1,
        Cor3Stitched,
        stitched,
        4 * r + 1,
        2 * t as usize * r + 1,
        &parts,
        "not stitched",
    );
    let v_nested = (2 * t as usize + 1) * r + 1;
    emit(
        &mut report,
        two,
        Cor1,
        Cor3Nested,
        stitched && outer_inner,
        5 * r + 1,
        v_nested,
        &parts,
        if stitched {
            "missing the outermost or innermost edge"
        } else {
            "not stitched"
        },
    );
    emit(
        &mut report,
        two,
        Cor2,
        Cor3Corners,
        three_corners,
        5 * r + 1,
        v_nested,
        &parts,
        "missing one of the three corner edges",
    );

    if two && *g == OrderedGraph::nested_pair(m, n) {
        report.exact(Prop3, 2 * m + 2 * n - 2, "nested pair: 2m + 2n - 2");
    } else {
        report.skip(Prop3, if two { "not the nested pair" } else { "two colors only" });
    }
    if two && *g == OrderedGraph::crossing_pair(m, n) {
        report.exact(Prop4, m + n + m.max(n) - 1, "crossing pair: m + n + max(m, n) - 1");
    } else {
        report.skip(
            Prop4,
            if two {
                "not the crossing pair"
            } else {
                "two colors only"
            },
        );
    }

    let core = core_matrix(g, None).expect("parts already determined");
    match minimalist_evidence(&core) {
        Ok(evidence) => match prop5_upper(t, m, n) {
            Some(v) => report.push(Prop5, BoundKind::Upper, v, format!("{parts}; {evidence}")),
            None => report.skip(Prop5, "bound is vacuous for these part sizes"),
        },
        Err(reason) => report.skip(Prop5, reason),
    }

    if two && *g == OrderedGraph::alternating_path(g.n()) {
        report.push(
            BalkoAlt,
            BoundKind::Upper,
            balko_alt_upper(g.n()),
            "alternating path: 2n - 4 + sqrt(2n^2 - 8n + 11)",
        );
    } else {
        report.skip(
            BalkoAlt,
            if two {
                "not an alternating path"
            } else {
                "two colors only"
            },
        );
    }
    report
}

/// Emits the two-color source when `t = 2` and its `t`-color extension when
/// `t >= 3`.
#[allow(clippy::too_many_arguments)]
fn emit(
    report: &mut BoundReport,
    two: bool,
    two_src: BoundSource,
    t_src: BoundSource,
    hypothesis: bool,
    two_value: usize,
    t_value: usize,
    parts: &str,
    failed: &str,
) {
    let t = report.t;
    if !hypothesis {
        report.skip(two_src, failed);
        report.skip(t_src, failed);
        return;
    }
    if two {
        report.push(two_src, BoundKind::Lower, two_value, parts);
        report.skip(t_src, "same as the two-color bound at t = 2");
    } else if t >= 3 {
        report.skip(two_src, "two colors only");
        report.push(t_src, BoundKind::Lower, t_value, parts);
    } else {
        report.skip(two_src, "two colors only");
        report.skip(t_src, "needs at least two colors");
    }
}
