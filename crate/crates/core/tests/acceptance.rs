use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordered_ramsey::block_coloring::{
    exhaustive_triangular_search, expand, figure3, figure4a, figure4b, tcolor_grid, BlockPattern, TcolorVariant,
};
use ordered_ramsey::matrix_patterns::{
    derive_minimalist, extremal_number, is_minimalist_window, sporadic_3x3, ZeroOneMatrix,
};
use ordered_ramsey::ordered_graph::{contains, interval_coloring, is_stitched, OrderedGraph};
use ordered_ramsey::ramsey::{
    balko_alt_expression, balko_alt_upper, bound_report, es_coloring, is_free, prop5_expression, prop5_upper,
    ramsey_exact, BoundKind, BoundSource, RamseyResult, SearchConfig,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn config(workers: usize) -> SearchConfig {
    SearchConfig {
        workers,
        ..SearchConfig::default()
    }
}

fn solve(g: &OrderedGraph, t: u8, workers: usize) -> Result<RamseyResult, String> {
    let r = ramsey_exact(g, t, 16, &config(workers)).map_err(|e| e.to_string())?;
    if !r.verify().map_err(|e| e.to_string())? {
        return Err(format!("witness for {:?} does not verify", g.edges()));
    }
    Ok(r)
}

fn expect_exact(name: &str, g: &OrderedGraph, workers: usize, want: usize) -> Check {
    let r = solve(g, 2, workers)?;
    match r.status.exact() {
        Some(v) if v == want => Ok(format!("{name}={v}")),
        _ => Err(format!("{name}: got {:?}, want {want}", r.status)),
    }
}

fn free(c: &ordered_ramsey::EdgeColoring, g: &OrderedGraph) -> Result<bool, String> {
    is_free(c, g).map_err(|e| e.to_string())
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(started: Instant, limit: Duration) -> Result<(), String> {
    let took = started.elapsed();
    require(took <= limit, format!("took {took:?}, limit {limit:?}"))
}

fn prop3() -> Check {
    let started = Instant::now();
    let a = expect_exact("nested(2,2)", &OrderedGraph::nested_pair(2, 2), 1, 6)?;
    within(started, Duration::from_secs(10))?;
    let b = expect_exact("nested(2,3)", &OrderedGraph::nested_pair(2, 3), 8, 8)?;
    within(started, Duration::from_secs(600))?;
    Ok(format!("{a} {b}"))
}

fn prop4() -> Check {
    let started = Instant::now();
    let a = expect_exact("crossing(2,2)", &OrderedGraph::crossing_pair(2, 2), 8, 5)?;
    let b = expect_exact("crossing(3,2)", &OrderedGraph::crossing_pair(3, 2), 8, 7)?;
    within(started, Duration::from_secs(60))?;
    Ok(format!("{a} {b}"))
}

fn erdos_szekeres() -> Check {
    let started = Instant::now();
    let a = expect_exact("mono(3)", &OrderedGraph::monotone_path(3), 8, 5)?;
    let c = es_coloring(4).map_err(|e| e.to_string())?;
    require(c.n() == 9, "construction size")?;
    require(
        free(&c, &OrderedGraph::monotone_path(4))?,
        "mono(4) copy in the 9-vertex construction",
    )?;
    within(started, Duration::from_secs(60))?;
    Ok(format!("{a}, R(mono(4)) >= 10 certified"))
}

/// Random stitched graphs with parts (3, 3), all distinct from `P6alt`.
fn random_stitched(count: usize, seed: u64) -> Vec<OrderedGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let alt = OrderedGraph::alternating_path(6);
    let mut out: Vec<OrderedGraph> = Vec::new();
    while out.len() < count {
        let mut core = ZeroOneMatrix::zeros(3, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                core.set(i, j, rng.gen_bool(0.5));
            }
        }
        let g = OrderedGraph::from_core_matrix(&core);
        if is_stitched(&g) && interval_coloring(&g).part_sizes() == [3, 3] && g != alt && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

fn thm1() -> Check {
    let started = Instant::now();
    let c = expand(&figure3(), 2).map_err(|e| e.to_string())?;
    require(c.n() == 8, "expanded size")?;
    require(free(&c, &OrderedGraph::alternating_path(6))?, "P6alt copy")?;
    let others = random_stitched(3, 0x5eed);
    for g in &others {
        require(free(&c, g)?, format!("copy of {:?}", g.edges()))?;
    }
    within(started, Duration::from_secs(10))?;
    Ok(format!(
        "K_8 free of P6alt and {} random stitched graphs, R >= 9",
        others.len()
    ))
}

fn cor12() -> Check {
    let started = Instant::now();
    let a = expand(&figure4a(), 2).map_err(|e| e.to_string())?;
    require(a.n() == 10, "expanded size")?;
    require(free(&a, &OrderedGraph::alternating_path(6))?, "P6alt copy")?;
    let b = expand(&figure4b(), 2).map_err(|e| e.to_string())?;
    require(b.n() == 10, "expanded size")?;
    require(
        free(&b, &OrderedGraph::crossing_pair_stitched(3, 3))?,
        "stitched crossing copy",
    )?;
    within(started, Duration::from_secs(10))?;
    Ok("R(P6alt) >= 11, R(crossing_stitched(3,3)) >= 11".into())
}

fn cor3() -> Check {
    let started = Instant::now();
    let cases = [
        (TcolorVariant::G1, OrderedGraph::alternating_path(4)),
        (TcolorVariant::G2, OrderedGraph::alternating_path(4)),
        (TcolorVariant::G3, OrderedGraph::crossing_pair_stitched(2, 2)),
    ];
    let mut certified = Vec::new();
    for t in [3, 4] {
        for (variant, g) in &cases {
            let grid = tcolor_grid(*variant, t).map_err(|e| e.to_string())?;
            let c = expand(&grid, 1).map_err(|e| e.to_string())?;
            require(c.n() == variant.grid_size(t), "grid size")?;
            require(free(&c, g)?, format!("{variant:?} t={t}: copy of {:?}", g.edges()))?;
            certified.push(format!("{variant:?}/t={t}>={}", c.n() + 1));
        }
    }
    within(started, Duration::from_secs(10))?;
    Ok(certified.join(" "))
}

fn remark() -> Check {
    use BlockPattern::*;
    let started = Instant::now();
    let cases: [(usize, &[BlockPattern], bool, bool); 6] = [
        (6, &[P2], false, false),
        (6, &[P3, P4], false, false),
        (5, &[P2], false, true),
        (5, &[P3, P4], false, true),
        (5, &BlockPattern::ALL, true, false),
        (4, &BlockPattern::ALL, true, true),
    ];
    for (k, forbidden, exempt, want) in cases {
        let found = exhaustive_triangular_search(k, forbidden, exempt, 2).map_err(|e| e.to_string())?;
        let ids: Vec<u8> = forbidden.iter().map(|p| p.id()).collect();
        require(
            found.is_some() == want,
            format!("k={k} avoid {ids:?}: found={}", found.is_some()),
        )?;
    }
    within(started, Duration::from_secs(300))?;
    Ok("6 search outcomes as stated".into())
}

fn minimalist() -> Check {
    let started = Instant::now();
    let a = sporadic_3x3();
    for m in 3..=5 {
        for n in 3..=5 {
            let ex = extremal_number(&a, m, n).map_err(|e| e.to_string())?;
            require(ex.verify(), "extremal witness")?;
            require(ex.value == 2 * m + 2 * n - 4, format!("ex({m},{n}) = {}", ex.value))?;
        }
    }
    require(
        derive_minimalist(&a, 1_000_000).map_err(|e| e.to_string())?.is_none(),
        "3x3 derivable",
    )?;
    let b = ZeroOneMatrix::from_rows(&[&[0, 1], &[1, 1]]).unwrap();
    let d = derive_minimalist(&b, 1_000_000)
        .map_err(|e| e.to_string())?
        .ok_or("no derivation")?;
    require(d.certifies(&b), "certificate replay")?;
    require(
        is_minimalist_window(&b, 5, 5).map_err(|e| e.to_string())?.holds,
        "window (5,5)",
    )?;
    within(started, Duration::from_secs(300))?;
    Ok(format!("ex = 2m+2n-4 on 3..5, {}-op certificate", d.ops.len()))
}

fn formulas() -> Check {
    let started = Instant::now();
    let report = bound_report(&OrderedGraph::alternating_path(4), 2);
    let cor1 = report.find(BoundSource::Cor1, BoundKind::Lower).map(|e| e.value);
    require(cor1 == Some(6), format!("Cor1 lower {cor1:?}"))?;
    let p5 = report.find(BoundSource::Prop5, BoundKind::Upper).map(|e| e.value);
    require(p5 == Some(9), format!("Prop5 upper {p5:?}"))?;
    for n in (4..=200).step_by(2) {
        let half = n / 2;
        require(
            prop5_expression(2, half, half) >= balko_alt_expression(n),
            format!("expression at n={n}"),
        )?;
        require(
            prop5_upper(2, half, half) >= Some(balko_alt_upper(n)),
            format!("bound at n={n}"),
        )?;
    }
    within(started, Duration::from_secs(1))?;
    Ok("Cor1=6, Prop5=9, Prop5 >= Balko on even 4..200".into())
}

fn soundness() -> Check {
    let started = Instant::now();
    let graphs = vec![
        OrderedGraph::monotone_path(2),
        OrderedGraph::monotone_path(3),
        OrderedGraph::alternating_path(4),
        OrderedGraph::nested_pair(2, 2),
        OrderedGraph::nested_pair(2, 3),
        OrderedGraph::nested_pair(3, 2),
        OrderedGraph::nested_pair(3, 3),
        OrderedGraph::crossing_pair(2, 2),
        OrderedGraph::crossing_pair(3, 2),
        OrderedGraph::crossing_pair(3, 3),
        OrderedGraph::crossing_pair_stitched(2, 2),
        OrderedGraph::nested_pair_stitched(2, 2),
    ];
    let mut solved = Vec::new();
    for g in &graphs {
        let base = solve(g, 2, 1)?;
        let value = base.status.exact().ok_or(format!("{:?} unsolved", g.edges()))?;
        for workers in [2, 8] {
            let other = solve(g, 2, workers)?;
            require(
                other.status == base.status && other.witness == base.witness,
                format!("{:?}: workers={workers} differs", g.edges()),
            )?;
        }
        let rev = solve(&g.reversed(), 2, 8)?;
        require(
            rev.status == base.status,
            format!("{:?}: reversal changes R", g.edges()),
        )?;
        let report = bound_report(g, 2);
        require(
            report.best_lower().is_none_or(|lo| lo <= value) && report.best_upper().is_none_or(|hi| value <= hi),
            format!("{:?}: R={value} outside reported bounds", g.edges()),
        )?;
        solved.push((g, value));
    }
    let mut pairs = 0;
    for (g, rg) in &solved {
        for (h, rh) in &solved {
            if g.n() <= h.n() && contains(h, g).map_err(|e| e.to_string())?.is_some() {
                pairs += 1;
                require(
                    rg <= rh,
                    format!("{:?} in {:?} but R {rg} > {rh}", g.edges(), h.edges()),
                )?;
            }
        }
    }
    within(started, Duration::from_secs(600))?;
    Ok(format!("{} instances, {pairs} containment pairs", solved.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exact values, nested pairs", prop3),
        ("exact values, crossing pairs", prop4),
        ("monotone paths", erdos_szekeres),
        ("stitched construction, 4r+1", thm1),
        ("corner-edge constructions, 5r+1", cor12),
        ("multicolor constructions", cor3),
        ("triangular grid searches", remark),
        ("minimalist matrices", minimalist),
        ("formula layer", formulas),
        ("soundness suite", soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let took = started.elapsed();
        match outcome {
            Ok(evidence) => println!("criterion {:>2} PASS {name}: {evidence} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
