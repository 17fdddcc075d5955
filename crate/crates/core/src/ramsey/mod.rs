//! Edge colorings of ordered complete graphs, explicit constructions, bound
//! formulas and the exact `t`-color Ramsey solver.

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod search;

pub use bounds::{
    balko_alt_expression, balko_alt_upper, bound_report, prop5_expression, prop5_upper, BoundEntry, BoundKind,
    BoundReport, BoundSource,
};
pub use coloring::{edge_index, edge_order, find_mono_copy, is_free, mono_copy, EdgeColoring};
pub use constructions::{es_coloring, threshold_crossing, threshold_nested};
pub use search::{
    exists_free_coloring, ramsey_exact, FreeSearch, ProofStats, RamseyResult, RamseyStatus, SearchConfig,
    DEFAULT_BUDGET, MAX_COLORS,
};
