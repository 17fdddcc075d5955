//! Explicit lower-bound colorings.

use crate::error::{Error, Result};
use crate::ramsey::EdgeColoring;

/// Coloring of `K_{2m+2n-3}`: red (1) on every edge touching the first `m-1`
/// or the last `n-1` vertices, blue (2) elsewhere. Free of `nested_pair(m, n)`.
pub fn threshold_nested(m: usize, n: usize) -> Result<EdgeColoring> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "threshold_nested needs m, n >= 2, got ({m}, {n})"
        )));
    }
    let size = 2 * m + 2 * n - 3;
    let tail = size - (n - 1);
    EdgeColoring::from_fn(size, 2, |u, v| if u < m - 1 || v >= tail { 1 } else { 2 })
}

/// Coloring of `K_{2m+n-2}`: red (1) on every edge touching the first `m-1`
/// vertices, blue (2) elsewhere. Free of `crossing_pair(m, n)` for `m >= n`;
/// reverse the graph when `m < n`.
pub fn threshold_crossing(m: usize, n: usize) -> Result<EdgeColoring> {
    if n < 2 || m < n {
        return Err(Error::InvalidArgument(format!(
            "threshold_crossing needs m >= n >= 2, got ({m}, {n})"
        )));
    }
    let size = 2 * m + n - 2;
    EdgeColoring::from_fn(size, 2, |u, _| if u < m - 1 { 1 } else { 2 })
}

/// Coloring of `K_{(k-1)^2}` with no monochromatic monotone path on `k`
/// vertices: vertices are consecutive runs of `k-1`, edges inside a run get
/// color 1 and edges between runs color 2.
pub fn es_coloring(k: usize) -> Result<EdgeColoring> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("es_coloring needs k >= 2, got {k}")));
    }
    let run = k - 1;
    EdgeColoring::from_fn(run * run, 2, |u, v| if u / run == v / run { 1 } else { 2 })
}
