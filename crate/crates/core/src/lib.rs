//! Ordered Ramsey numbers of graphs with small interval chromatic number.
//!
//! - [`ordered_graph`]: ordered graphs, interval colorings, containment, core matrices.
//! - [`matrix_patterns`]: 0/1-matrix containment, extremal numbers, minimalist matrices.
//! - [`block_coloring`]: triangular block grids, forbidden block patterns, grid search.
//! - [`ramsey`]: edge colorings, lower-bound constructions, bounds and the exact solver.

mod bits;
pub mod block_coloring;
pub mod error;
pub mod matrix_patterns;
pub mod ordered_graph;
pub mod ramsey;

pub use block_coloring::{BlockColoring, BlockPattern, TcolorVariant};
pub use error::{Error, Result};
pub use matrix_patterns::ZeroOneMatrix;
pub use ordered_graph::{Embedding, OrderedGraph};
pub use ramsey::{EdgeColoring, RamseyResult, RamseyStatus, SearchConfig};
