//! Block colorings of triangular grids and the four three-cell patterns a
//! block coloring has to avoid to stay free of a 2-ichromatic ordered graph.
//!
//! A grid of size `k` stores colors for the cells `(i, j)` with `i <= j`; the
//! lower triangle is implied by symmetry. Colors are `1..=palette`, with 1 for
//! red and 2 for cyan in the two-color figures, then 3 (violet) and 4
//! (yellow) for the larger palettes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ramsey::EdgeColoring;

/// Most cells the exhaustive grid search will enumerate.
pub const SEARCH_CELL_CAPACITY: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BlockGridJson", into = "BlockGridJson")]
pub struct BlockColoring {
    k: usize,
    palette: u8,
    cells: Vec<u8>,
}

/// Wire form: row `i` lists the colors of cells `(i, i), (i, i+1), ...`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockGridJson {
    pub k: usize,
    pub palette: u8,
    pub rows: Vec<Vec<u8>>,
}

impl TryFrom<BlockGridJson> for BlockColoring {
    type Error = Error;

    fn try_from(raw: BlockGridJson) -> Result<Self> {
        if raw.rows.len() != raw.k {
            return Err(Error::InvalidGrid(format!(
                "expected {} rows, found {}",
                raw.k,
                raw.rows.len()
            )));
        }
        BlockColoring::from_rows(raw.palette, raw.rows)
    }
}

impl From<BlockColoring> for BlockGridJson {
    fn from(b: BlockColoring) -> Self {
        BlockGridJson {
            k: b.k,
            palette: b.palette,
            rows: b.rows(),
        }
    }
}

fn offset(k: usize, i: usize) -> usize {
    i * k - i * i.saturating_sub(1) / 2
}

impl BlockColoring {
    pub fn uniform(k: usize, palette: u8, color: u8) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidGrid("grid size must be positive".into()));
        }
        if color == 0 || color > palette {
            return Err(Error::InvalidGrid(format!("color {color} outside 1..={palette}")));
        }
        Ok(BlockColoring {
            k,
            palette,
            cells: vec![color; k * (k + 1) / 2],
        })
    }

    /// Builds a grid from its upper-triangle rows, each starting on the diagonal.
    pub fn from_rows(palette: u8, rows: Vec<Vec<u8>>) -> Result<Self> {
        let k = rows.len();
        let mut grid = BlockColoring::uniform(k, palette.max(1), 1)?;
        grid.palette = palette;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k - i {
                return Err(Error::InvalidGrid(format!(
                    "row {i} has {} cells, expected {}",
                    row.len(),
                    k - i
                )));
            }
            for (d, &c) in row.iter().enumerate() {
                if c == 0 || c > palette {
                    return Err(Error::InvalidGrid(format!(
                        "cell ({i}, {}) has color {c} outside 1..={palette}",
                        i + d
                    )));
                }
                grid.set(i, i + d, c);
            }
        }
        Ok(grid)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn palette(&self) -> u8 {
        self.palette
    }

    /// Color of cell `(i, j)`; the order of the indices does not matter.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        let (i, j) = (i.min(j), i.max(j));
        self.cells[offset(self.k, i) + (j - i)]
    }

    pub fn set(&mut self, i: usize, j: usize, color: u8) {
        let (i, j) = (i.min(j), i.max(j));
        let idx = offset(self.k, i) + (j - i);
        self.cells[idx] = color;
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.k)
            .map(|i| (i..self.k).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockPattern {
    P1,
    P2,
    P3,
    P4,
}

impl BlockPattern {
    pub const ALL: [BlockPattern; 4] = [BlockPattern::P1, BlockPattern::P2, BlockPattern::P3, BlockPattern::P4];

    pub fn id(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1..=4 => Ok(Self::ALL[id as usize - 1]),
            _ => Err(Error::InvalidArgument(format!("no block pattern {id}"))),
        }
    }

    /// Cells of the pattern inside its 2x2 frame, `(row, col)`.
    pub fn cells(self) -> [(usize, usize); 3] {
        match self {
            BlockPattern::P1 => [(0, 0), (0, 1), (1, 1)],
            BlockPattern::P2 => [(0, 0), (1, 0), (1, 1)],
            BlockPattern::P3 => [(0, 0), (0, 1), (1, 0)],
            BlockPattern::P4 => [(0, 1), (1, 0), (1, 1)],
        }
    }

    /// Grid cells of the pattern placed on block rows `(i, i2)` and block
    /// columns `(j, j2)`.
    fn place(self, rows: (usize, usize), cols: (usize, usize)) -> [(usize, usize); 3] {
        self.cells().map(|(a, b)| {
            (
                if a == 0 { rows.0 } else { rows.1 },
                if b == 0 { cols.0 } else { cols.1 },
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternOccurrence {
    pub pattern: u8,
    pub rows: (usize, usize),
    pub cols: (usize, usize),
    pub color: u8,
}

/// A placement that keeps all three cells on or above the diagonal, minus the
/// pattern-1 placements whose upper-left or lower-right cell is diagonal when
/// those are exempt.
fn placement_counts(p: BlockPattern, rows: (usize, usize), cols: (usize, usize), exempt_diagonal_p1: bool) -> bool {
    let cells = p.place(rows, cols);
    if cells.iter().any(|&(a, b)| a > b) {
        return false;
    }
    !(exempt_diagonal_p1 && p == BlockPattern::P1 && (rows.0 == cols.0 || rows.1 == cols.1))
}

fn placements(k: usize) -> impl Iterator<Item = ((usize, usize), (usize, usize))> {
    (0..k).flat_map(move |i| {
        (i + 1..k).flat_map(move |i2| (0..k).flat_map(move |j| (j + 1..k).map(move |j2| ((i, i2), (j, j2)))))
    })
}

/// First monochromatic occurrence of `p`, ordered by `(i, i2, j, j2)`.
pub fn find_pattern(b: &BlockColoring, p: BlockPattern, exempt_diagonal_p1: bool) -> Option<PatternOccurrence> {
    placements(b.k)
        .filter(|&(rows, cols)| placement_counts(p, rows, cols, exempt_diagonal_p1))
        .find_map(|(rows, cols)| {
            let [c0, c1, c2] = p.place(rows, cols).map(|(x, y)| b.get(x, y));
            (c0 == c1 && c1 == c2).then_some(PatternOccurrence {
                pattern: p.id(),
                rows,
                cols,
                color: c0,
            })
        })
}

/// Ids of the patterns with no monochromatic occurrence in `b`.
pub fn pattern_report(b: &BlockColoring, exempt_diagonal_p1: bool) -> BTreeSet<u8> {
    BlockPattern::ALL
        .into_iter()
        .filter(|&p| find_pattern(b, p, exempt_diagonal_p1).is_none())
        .map(BlockPattern::id)
        .collect()
}

fn builtin(rows: &[&[u8]]) -> BlockColoring {
    BlockColoring::from_rows(2, rows.iter().map(|r| r.to_vec()).collect()).expect("static grid")
}

/// 4x4 grid avoiding all four patterns, except pattern 1 on the diagonal.
pub fn figure3() -> BlockColoring {
    builtin(&[&[2, 2, 2, 1], &[1, 1, 2], &[1, 2], &[2]])
}

/// 5x5 grid avoiding patterns 3 and 4.
pub fn figure4a() -> BlockColoring {
    builtin(&[&[2, 2, 2, 2, 1], &[1, 1, 2, 2], &[1, 1, 2], &[1, 2], &[2]])
}

/// 5x5 grid avoiding pattern 2.
pub fn figure4b() -> BlockColoring {
    builtin(&[&[2, 2, 2, 2, 2], &[1, 2, 1, 1], &[1, 2, 1], &[2, 1], &[2]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TcolorVariant {
    /// Stitched graphs in general: avoids every pattern.
    G1,
    /// Stitched graphs with the outer and inner corner edges: avoids 3 and 4.
    G2,
    /// Graphs with three corner edges: avoids pattern 2.
    G3,
}

impl TcolorVariant {
    /// Patterns the grid is built to avoid, and whether pattern 1 on the
    /// diagonal is exempt.
    pub fn avoids(self) -> (&'static [u8], bool) {
        match self {
            TcolorVariant::G1 => (&[1, 2, 3, 4], true),
            TcolorVariant::G2 => (&[3, 4], false),
            TcolorVariant::G3 => (&[2], false),
        }
    }

    pub fn grid_size(self, t: usize) -> usize {
        match self {
            TcolorVariant::G1 => 2 * t,
            TcolorVariant::G2 | TcolorVariant::G3 => 2 * t + 1,
        }
    }
}

/// The `t`-color grid for a variant, grown from its two-color base by adding
/// a layer of the new color per step.
///
/// G1 and G2 shift the previous grid one block down and right and fill the
/// new top row and right column with the new color; G1 puts color 1 in the
/// new top-right cell. G3 shifts the previous grid one block down and two
/// right and fills the new top row and the new diagonal.
pub fn tcolor_grid(variant: TcolorVariant, t: usize) -> Result<BlockColoring> {
    if t < 2 {
        return Err(Error::InvalidArgument("tcolor grids need at least two colors".into()));
    }
    if t > u8::MAX as usize {
        return Err(Error::Capacity(format!("{t} colors")));
    }
    let mut grid = match variant {
        TcolorVariant::G1 => figure3(),
        TcolorVariant::G2 => figure4a(),
        TcolorVariant::G3 => figure4b(),
    };
    for color in 3..=t as u8 {
        let prev = grid;
        let k = prev.k + 2;
        let mut next = BlockColoring::uniform(k, color, color)?;
        let (dr, dc) = match variant {
            TcolorVariant::G1 | TcolorVariant::G2 => (1, 1),
            TcolorVariant::G3 => (1, 2),
        };
        for i in 0..prev.k {
            for j in i..prev.k {
                next.set(i + dr, j + dc, prev.get(i, j));
            }
        }
        if variant == TcolorVariant::G1 {
            next.set(0, k - 1, 1);
        }
        grid = next;
    }
    debug_assert!({
        let (ids, exempt) = variant.avoids();
        let report = pattern_report(&grid, exempt);
        ids.iter().all(|id| report.contains(id))
    });
    Ok(grid)
}

/// Searches every coloring of the `k`-grid for one with no monochromatic
/// occurrence of the forbidden patterns and returns the lexicographically
/// first in row-major cell order.
///
/// Colors are introduced in order, so cell `(0, 0)` is always color 1; this
/// is the only symmetry used.
pub fn exhaustive_triangular_search(
    k: usize,
    forbidden: &[BlockPattern],
    exempt_diagonal_p1: bool,
    palette: u8,
) -> Result<Option<BlockColoring>> {
    if k == 0 || palette == 0 {
        return Err(Error::InvalidArgument("grid size and palette must be positive".into()));
    }
    let cells = k * (k + 1) / 2;
    if cells > SEARCH_CELL_CAPACITY {
        return Err(Error::Capacity(format!(
            "grid of size {k} has {cells} cells, limit {SEARCH_CELL_CAPACITY}"
        )));
    }
    // every placement is checked once, when its last cell gets a color
    let mut triggers: Vec<Vec<[usize; 3]>> = vec![Vec::new(); cells];
    for &p in forbidden {
        for (rows, cols) in placements(k) {
            if !placement_counts(p, rows, cols, exempt_diagonal_p1) {
                continue;
            }
            let idx = p.place(rows, cols).map(|(a, b)| offset(k, a) + (b - a));
            let last = *idx.iter().max().expect("three cells");
            triggers[last].push(idx);
        }
    }
    let mut colors = vec![0u8; cells];
    if fill(0, 0, palette, &triggers, &mut colors) {
        Ok(Some(BlockColoring {
            k,
            palette,
            cells: colors,
        }))
    } else {
        Ok(None)
    }
}

fn fill(idx: usize, used: u8, palette: u8, triggers: &[Vec<[usize; 3]>], colors: &mut [u8]) -> bool {
    if idx == colors.len() {
        return true;
    }
    for c in 1..=palette.min(used + 1) {
        colors[idx] = c;
        let clash = triggers[idx].iter().any(|cells| cells.iter().all(|&x| colors[x] == c));
        if !clash && fill(idx + 1, used.max(c), palette, triggers, colors) {
            return true;
        }
    }
    colors[idx] = 0;
    false
}

/// The edge coloring of `K_{k r}` that is constant on `r x r` blocks.
pub fn expand(b: &BlockColoring, r: usize) -> Result<EdgeColoring> {
    if r == 0 {
        return Err(Error::InvalidArgument("block size must be positive".into()));
    }
    let n = b.k * r;
    EdgeColoring::from_fn(n, b.palette, |u, v| b.get(u / r, v / r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(report: &BTreeSet<u8>, ids: &[u8]) -> bool {
        ids.iter().all(|id| report.contains(id))
    }

    #[test]
    fn transcription_round_trips() {
        let g = figure4b();
        assert_eq!(g.rows()[1], vec![1, 2, 1, 1]);
        assert_eq!(g.get(3, 1), 1);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(
            json,
            r#"{"k":5,"palette":2,"rows":[[2,2,2,2,2],[1,2,1,1],[1,2,1],[2,1],[2]]}"#
        );
        assert_eq!(serde_json::from_str::<BlockColoring>(&json).unwrap(), g);
        assert!(serde_json::from_str::<BlockColoring>(r#"{"k":2,"palette":2,"rows":[[1,3],[1]]}"#).is_err());
        assert!(serde_json::from_str::<BlockColoring>(r#"{"k":2,"palette":2,"rows":[[1],[1]]}"#).is_err());
    }

    #[test]
    fn figure3_patterns() {
        let g = figure3();
        for p in [BlockPattern::P2, BlockPattern::P3, BlockPattern::P4] {
            assert_eq!(find_pattern(&g, p, false), None, "{p:?}");
        }
        assert!(find_pattern(&g, BlockPattern::P1, false).is_some());
        assert_eq!(find_pattern(&g, BlockPattern::P1, true), None);
    }

    #[test]
    fn uniform_grid_occurrence() {
        let g = BlockColoring::uniform(3, 2, 1).unwrap();
        assert_eq!(
            find_pattern(&g, BlockPattern::P2, false),
            Some(PatternOccurrence {
                pattern: 2,
                rows: (0, 1),
                cols: (1, 2),
                color: 1
            })
        );
    }

    #[test]
    fn figure4_patterns() {
        let a = figure4a();
        assert_eq!(find_pattern(&a, BlockPattern::P3, false), None);
        assert_eq!(find_pattern(&a, BlockPattern::P4, false), None);
        assert!(find_pattern(&a, BlockPattern::P2, false).is_some());
        assert_eq!(find_pattern(&figure4b(), BlockPattern::P2, false), None);
    }

    #[test]
    fn tcolor_base_cases() {
        assert_eq!(tcolor_grid(TcolorVariant::G1, 2).unwrap(), figure3());
        assert_eq!(tcolor_grid(TcolorVariant::G2, 2).unwrap(), figure4a());
        assert_eq!(tcolor_grid(TcolorVariant::G3, 2).unwrap(), figure4b());
        assert!(tcolor_grid(TcolorVariant::G1, 1).is_err());
    }

    #[test]
    fn tcolor_four_colors_match_figures() {
        let a = tcolor_grid(TcolorVariant::G1, 4).unwrap();
        let expect_a: Vec<Vec<u8>> = vec![
            vec![4, 4, 4, 4, 4, 4, 4, 1],
            vec![3, 3, 3, 3, 3, 1, 4],
            vec![2, 2, 2, 1, 3, 4],
            vec![1, 1, 2, 3, 4],
            vec![1, 2, 3, 4],
            vec![2, 3, 4],
            vec![3, 4],
            vec![4],
        ];
        assert_eq!(a.rows(), expect_a);

        let b = tcolor_grid(TcolorVariant::G2, 4).unwrap();
        let expect_b: Vec<Vec<u8>> = vec![
            vec![4; 9],
            vec![3, 3, 3, 3, 3, 3, 3, 4],
            vec![2, 2, 2, 2, 1, 3, 4],
            vec![1, 1, 2, 2, 3, 4],
            vec![1, 1, 2, 3, 4],
            vec![1, 2, 3, 4],
            vec![2, 3, 4],
            vec![3, 4],
            vec![4],
        ];
        assert_eq!(b.rows(), expect_b);

        let c = tcolor_grid(TcolorVariant::G3, 4).unwrap();
        let expect_c: Vec<Vec<u8>> = vec![
            vec![4; 9],
            vec![4, 3, 3, 3, 3, 3, 3, 3],
            vec![4, 3, 2, 2, 2, 2, 2],
            vec![4, 3, 1, 2, 1, 1],
            vec![4, 3, 1, 2, 1],
            vec![4, 3, 2, 1],
            vec![4, 3, 2],
            vec![4, 3],
            vec![4],
        ];
        assert_eq!(c.rows(), expect_c);
    }

    #[test]
    fn tcolor_three_is_inner_layer_of_four() {
        let outer = tcolor_grid(TcolorVariant::G1, 4).unwrap();
        let inner = tcolor_grid(TcolorVariant::G1, 3).unwrap();
        assert_eq!(inner.k(), 6);
        for i in 0..6 {
            for j in i..6 {
                assert_eq!(inner.get(i, j), outer.get(i + 1, j + 1));
            }
        }
    }

    #[test]
    fn tcolor_reports() {
        for t in 2..=5 {
            let g1 = tcolor_grid(TcolorVariant::G1, t).unwrap();
            assert_eq!(g1.k(), 2 * t);
            assert_eq!(pattern_report(&g1, true), BTreeSet::from([1, 2, 3, 4]));
            let g2 = tcolor_grid(TcolorVariant::G2, t).unwrap();
            assert_eq!(g2.k(), 2 * t + 1);
            assert!(has(&pattern_report(&g2, false), &[3, 4]));
            let g3 = tcolor_grid(TcolorVariant::G3, t).unwrap();
            assert_eq!(g3.k(), 2 * t + 1);
            assert!(has(&pattern_report(&g3, false), &[2]));
        }
    }

    #[test]
    fn small_searches() {
        use BlockPattern::*;
        let found = exhaustive_triangular_search(5, &[P3, P4], false, 2).unwrap().unwrap();
        assert!(has(&pattern_report(&found, false), &[3, 4]));
        assert_eq!(found.get(0, 0), 1);
        let found = exhaustive_triangular_search(4, &BlockPattern::ALL, true, 2)
            .unwrap()
            .unwrap();
        assert_eq!(pattern_report(&found, true).len(), 4);
        assert_eq!(
            exhaustive_triangular_search(5, &BlockPattern::ALL, true, 2).unwrap(),
            None
        );
        assert!(matches!(
            exhaustive_triangular_search(8, &[P2], false, 2),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn expand_reads_block_colors() {
        let c = expand(&figure3(), 1).unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.color(0, 3), 1);
        assert_eq!(c.color(0, 1), 2);
        let c = expand(&figure3(), 2).unwrap();
        assert_eq!(c.n(), 8);
        assert_eq!(c.color(0, 7), 1);
        assert_eq!(c.color(0, 1), 2);
        assert_eq!(c.color(2, 3), 1);
    }
}
