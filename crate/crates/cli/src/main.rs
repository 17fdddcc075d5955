use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordered_ramsey::block_coloring::{
    exhaustive_triangular_search, expand, figure3, figure4a, figure4b, find_pattern, pattern_report, tcolor_grid,
    BlockColoring, BlockPattern, TcolorVariant,
};
use ordered_ramsey::matrix_patterns::{derive_minimalist, extremal_number, is_minimalist_window, ZeroOneMatrix};
use ordered_ramsey::ordered_graph::{
    contains, core_matrix, interval_chromatic, interval_coloring, is_stitched, valid_splits, OrderedGraph,
};
use ordered_ramsey::ramsey::{
    bound_report, es_coloring, find_mono_copy, ramsey_exact, threshold_crossing, threshold_nested, SearchConfig,
    DEFAULT_BUDGET,
};
use ordered_ramsey::EdgeColoring;
use ordered_ramsey_cli::cache::{self, Cache, Entry};
use ordered_ramsey_cli::{repro, CliError, CliResult};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

/// Ordered Ramsey numbers of graphs with small interval chromatic number.
///
/// JSON goes to standard output, progress to standard error. Exit codes:
/// 0 success, 1 negative or empty result, 2 usage, 3 capacity or budget.
#[derive(Parser)]
#[command(name = "ordered-ramsey", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Solver threads [default: available parallelism]
    #[arg(long, global = true, env = "ORDERED_RAMSEY_WORKERS")]
    workers: Option<usize>,
    /// Result cache file
    #[arg(long, global = true, default_value = cache::DEFAULT_PATH)]
    cache: PathBuf,
    /// Neither read nor write the cache
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Ordered graphs
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Order-preserving copy of PATTERN in HOST
    Contains { host: String, pattern: String },
    /// Ramsey numbers
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Build a block grid or an edge coloring
    Construct {
        kind: Construction,
        /// Sizes: t for tcolor grids, m n for nested/crossing, k for es
        params: Vec<usize>,
        /// Blow a grid up into an edge coloring with blocks of this size
        #[arg(long)]
        expand: Option<usize>,
    },
    /// Check an edge coloring for monochromatic copies of a graph
    Verify { coloring: String, graph: String },
    /// Forbidden block patterns
    #[command(subcommand)]
    Patterns(PatternsCmd),
    /// 0/1 matrix patterns
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Re-run the check behind a theorem (or `all`)
    Repro { id: String },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Interval chromatic number, parts, stitchedness and core matrix
    Info { graph: String },
    /// Generate a graph from a named family
    Gen { family: Family, params: Vec<usize> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Monotone,
    Alternating,
    Nested,
    Crossing,
    NestedStitched,
    CrossingStitched,
    Complete,
    Edgeless,
}

#[derive(Subcommand)]
enum RamseyCmd {
    /// Exact value by exhaustive search
    Exact {
        graph: String,
        #[arg(long, default_value_t = 2)]
        colors: u8,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        /// Node budget for the whole run
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Every applicable bound formula
    Bounds {
        graph: String,
        #[arg(long, default_value_t = 2)]
        colors: u8,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Fig3,
    Fig4a,
    Fig4b,
    Tcolor1,
    Tcolor2,
    Tcolor3,
    Nested,
    Crossing,
    Es,
}

#[derive(Subcommand)]
enum PatternsCmd {
    /// Which patterns a grid avoids
    Check {
        grid: String,
        #[arg(long)]
        exempt_diag_p1: bool,
    },
    /// Search every 2-coloring of a grid for one avoiding the given patterns
    Search {
        #[arg(long)]
        size: usize,
        /// Pattern ids, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        avoid: Vec<u8>,
        #[arg(long)]
        exempt_diag_p1: bool,
        #[arg(long, default_value_t = 2)]
        palette: u8,
    },
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// Extremal number ex(m, n)
    Ex {
        matrix: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Compare the extremal number with the minimalist formula on a window
    Minimalist {
        matrix: String,
        #[arg(long, num_args = 2, value_names = ["M", "N"], default_values_t = [5, 5])]
        window: Vec<usize>,
    },
    /// Chain of elementary operations reaching the matrix
    Derive {
        matrix: String,
        #[arg(long, default_value_t = 200_000)]
        max_steps: usize,
    },
}

/// Whether the command produced the result that was asked for.
enum Outcome {
    Found,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Found) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Reads JSON from a file, from standard input for `-`, or inline when the
/// argument itself starts with `{`.
fn load<T: DeserializeOwned>(source: &str) -> CliResult<T> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::Usage(format!("{source}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn emit<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn params<const N: usize>(what: &str, given: &[usize]) -> CliResult<[usize; N]> {
    given
        .try_into()
        .map_err(|_| CliError::Usage(format!("{what} takes {N} parameter(s), got {}", given.len())))
}

impl Global {
    fn search_config(&self, budget: u64) -> SearchConfig {
        let default = SearchConfig::default();
        SearchConfig {
            budget,
            workers: self.workers.filter(|&w| w > 0).unwrap_or(default.workers),
        }
    }

    fn cache(&self) -> Option<Cache> {
        (!self.no_cache).then(|| Cache::new(&self.cache))
    }
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let global = &cli.global;
    match cli.command {
        Command::Graph(GraphCmd::Info { graph }) => {
            let g: OrderedGraph = load(&graph)?;
            let coloring = interval_coloring(&g);
            let splits = valid_splits(&g);
            let core = if interval_chromatic(&g) == 2 && splits.len() == 1 {
                Some(core_matrix(&g, Some(splits[0]))?)
            } else {
                None
            };
            emit(&json!({
                "n": g.n(),
                "interval_chromatic": coloring.part_count(),
                "stitched": is_stitched(&g),
                "parts": coloring.parts(),
                "part_sizes": coloring.part_sizes(),
                "splits": splits,
                "core_matrix": core,
            }))?;
        }
        Command::Graph(GraphCmd::Gen { family, params: p }) => {
            let g = match family {
                Family::Monotone => OrderedGraph::monotone_path(params::<1>("monotone", &p)?[0]),
                Family::Alternating => OrderedGraph::alternating_path(params::<1>("alternating", &p)?[0]),
                Family::Complete => OrderedGraph::complete(params::<1>("complete", &p)?[0]),
                Family::Edgeless => OrderedGraph::edgeless(params::<1>("edgeless", &p)?[0]),
                Family::Nested => {
                    let [m, n] = params("nested", &p)?;
                    OrderedGraph::nested_pair(m, n)
                }
                Family::Crossing => {
                    let [m, n] = params("crossing", &p)?;
                    OrderedGraph::crossing_pair(m, n)
                }
                Family::NestedStitched => {
                    let [m, n] = params("nested-stitched", &p)?;
                    OrderedGraph::nested_pair_stitched(m, n)
                }
                Family::CrossingStitched => {
                    let [m, n] = params("crossing-stitched", &p)?;
                    OrderedGraph::crossing_pair_stitched(m, n)
                }
            };
            emit(&g)?;
        }
        Command::Contains { host, pattern } => {
            let host: OrderedGraph = load(&host)?;
            let pattern: OrderedGraph = load(&pattern)?;
            let found = contains(&host, &pattern)?;
            emit(&json!({ "contained": found.is_some(), "embedding": found }))?;
            if found.is_none() {
                return Ok(Outcome::Negative);
            }
        }
        Command::Ramsey(RamseyCmd::Exact {
            graph,
            colors,
            nmax,
            budget,
        }) => {
            let g: OrderedGraph = load(&graph)?;
            let key = cache::key(&g, &[("t", colors as u64), ("nmax", nmax as u64)]);
            let store = global.cache();
            if let Some(store) = &store {
                if let Some(Entry::Ramsey(r)) = store.get(&key)? {
                    if r.graph == g && r.t == colors {
                        eprintln!("cache hit in {}", store.path().display());
                        emit(&r)?;
                        return Ok(Outcome::Found);
                    }
                }
            }
            let config = global.search_config(budget);
            eprintln!("searching with {} worker(s), budget {budget} nodes", config.workers);
            let r = ramsey_exact(&g, colors, nmax, &config)?;
            eprintln!(
                "{:?} after {} nodes in {} ms",
                r.status, r.proof_stats.nodes, r.proof_stats.wall_ms
            );
            if let Some(store) = &store {
                store.put(&key, Entry::Ramsey(r.clone()))?;
            }
            emit(&r)?;
        }
        Command::Ramsey(RamseyCmd::Bounds { graph, colors }) => {
            let g: OrderedGraph = load(&graph)?;
            emit(&bound_report(&g, colors))?;
        }
        Command::Construct {
            kind,
            params: p,
            expand: r,
        } => {
            let grid = |b: BlockColoring| -> CliResult<()> {
                match r {
                    Some(r) => emit(&expand(&b, r)?),
                    None => emit(&b),
                }
            };
            let tcolor =
                |variant| -> CliResult<BlockColoring> { Ok(tcolor_grid(variant, params::<1>("tcolor", &p)?[0])?) };
            let edges = |c: EdgeColoring| -> CliResult<()> {
                if r.is_some() {
                    return Err(CliError::Usage("--expand applies to block grids only".into()));
                }
                emit(&c)
            };
            match kind {
                Construction::Fig3 => grid(figure3())?,
                Construction::Fig4a => grid(figure4a())?,
                Construction::Fig4b => grid(figure4b())?,
                Construction::Tcolor1 => grid(tcolor(TcolorVariant::G1)?)?,
                Construction::Tcolor2 => grid(tcolor(TcolorVariant::G2)?)?,
                Construction::Tcolor3 => grid(tcolor(TcolorVariant::G3)?)?,
                Construction::Nested => {
                    let [m, n] = params("nested", &p)?;
                    edges(threshold_nested(m, n)?)?
                }
                Construction::Crossing => {
                    let [m, n] = params("crossing", &p)?;
                    edges(threshold_crossing(m, n)?)?
                }
                Construction::Es => edges(es_coloring(params::<1>("es", &p)?[0])?)?,
            }
        }
        Command::Verify { coloring, graph } => {
            let c: EdgeColoring = load(&coloring)?;
            let g: OrderedGraph = load(&graph)?;
            let copy = find_mono_copy(&c, &g)?;
            let free = copy.is_none();
            let (color, embedding) = copy.unzip();
            emit(&json!({ "free": free, "color": color, "embedding": embedding }))?;
            if !free {
                return Ok(Outcome::Negative);
            }
        }
        Command::Patterns(PatternsCmd::Check { grid, exempt_diag_p1 }) => {
            let b: BlockColoring = load(&grid)?;
            let occurrences: Vec<_> = BlockPattern::ALL
                .into_iter()
                .filter_map(|p| find_pattern(&b, p, exempt_diag_p1))
                .collect();
            emit(&json!({
                "avoided": pattern_report(&b, exempt_diag_p1),
                "occurrences": occurrences,
            }))?;
        }
        Command::Patterns(PatternsCmd::Search {
            size,
            avoid,
            exempt_diag_p1,
            palette,
        }) => {
            let forbidden = avoid
                .iter()
                .map(|&id| BlockPattern::from_id(id))
                .collect::<Result<Vec<_>, _>>()?;
            match exhaustive_triangular_search(size, &forbidden, exempt_diag_p1, palette)? {
                Some(b) => emit(&json!({ "result": "found", "coloring": b }))?,
                None => {
                    emit(&json!({ "result": "none (exhausted)" }))?;
                    return Ok(Outcome::Negative);
                }
            }
        }
        Command::Matrix(MatrixCmd::Ex { matrix, m, n }) => {
            let a: ZeroOneMatrix = load(&matrix)?;
            let key = cache::key(&a, &[("m", m as u64), ("n", n as u64)]);
            let store = global.cache();
            if let Some(store) = &store {
                if let Some(Entry::Extremal(e)) = store.get(&key)? {
                    if e.pattern == a && (e.m, e.n) == (m, n) {
                        eprintln!("cache hit in {}", store.path().display());
                        emit(&e)?;
                        return Ok(Outcome::Found);
                    }
                }
            }
            let e = extremal_number(&a, m, n)?;
            if let Some(store) = &store {
                store.put(&key, Entry::Extremal(e.clone()))?;
            }
            emit(&e)?;
        }
        Command::Matrix(MatrixCmd::Minimalist { matrix, window }) => {
            let a: ZeroOneMatrix = load(&matrix)?;
            let check = is_minimalist_window(&a, window[0], window[1])?;
            emit(&check)?;
            if !check.holds {
                return Ok(Outcome::Negative);
            }
        }
        Command::Matrix(MatrixCmd::Derive { matrix, max_steps }) => {
            let a: ZeroOneMatrix = load(&matrix)?;
            let d = derive_minimalist(&a, max_steps)?;
            emit(&json!({ "derivation": d }))?;
            if d.is_none() {
                return Ok(Outcome::Negative);
            }
        }
        Command::Repro { id } => {
            let config = global.search_config(DEFAULT_BUDGET);
            let ids: Vec<&str> = if id == "all" {
                repro::IDS.to_vec()
            } else {
                vec![id.as_str()]
            };
            let mut reports = Vec::new();
            for id in ids {
                let report = repro::run(id, &config)?;
                eprintln!("{} {id}", report.verdict);
                reports.push(report);
            }
            let all_pass = reports.iter().all(|r| r.passed());
            if reports.len() == 1 {
                emit(&reports[0])?;
            } else {
                emit(&reports)?;
            }
            if !all_pass {
                return Ok(Outcome::Negative);
            }
        }
    }
    Ok(Outcome::Found)
}
