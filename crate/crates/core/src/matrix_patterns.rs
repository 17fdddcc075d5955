//! 0/1-matrix patterns: order-preserving containment, exact extremal numbers
//! by branch and bound, minimalist checks and elementary operations.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, low_mask, range_mask, WORD};
use crate::error::{Error, Result};

/// Largest `m * n` accepted by [`extremal_number`].
pub const EXTREMAL_CAPACITY: usize = 36;

/// A rectangular 0/1 matrix stored as one bitset word per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

/// Wire form: `{"rows": 2, "cols": 2, "ones": [[0, 1], [1, 0]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub ones: Vec<[usize; 2]>,
}

impl TryFrom<MatrixJson> for ZeroOneMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let mut m = ZeroOneMatrix::zeros(raw.rows, raw.cols)?;
        for [i, j] in raw.ones {
            if i >= raw.rows || j >= raw.cols {
                return Err(Error::InvalidMatrix(format!(
                    "cell ({i}, {j}) outside a {}x{} matrix",
                    raw.rows, raw.cols
                )));
            }
            if m.get(i, j) {
                return Err(Error::InvalidMatrix(format!("cell ({i}, {j}) listed twice")));
            }
            m.set(i, j, true);
        }
        Ok(m)
    }
}

impl From<ZeroOneMatrix> for MatrixJson {
    fn from(m: ZeroOneMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            ones: m.ones().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl ZeroOneMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix("dimensions must be at least 1x1".into()));
        }
        if cols > WORD {
            return Err(Error::Capacity(format!(
                "{cols} columns exceeds the {WORD}-column limit"
            )));
        }
        Ok(ZeroOneMatrix {
            rows,
            cols,
            bits: vec![0; rows],
        })
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = ZeroOneMatrix::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidMatrix("ragged rows".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return Err(Error::InvalidMatrix(format!("entry {x} is not 0/1"))),
                }
            }
        }
        Ok(m)
    }

    pub fn all_ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = ZeroOneMatrix::zeros(rows, cols)?;
        m.bits.fill(low_mask(cols));
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i] & bit(j) != 0
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.bits[i] |= bit(j);
        } else {
            self.bits[i] &= !bit(j);
        }
    }

    pub fn row_word(&self, i: usize) -> u64 {
        self.bits[i]
    }

    /// Nonzero cells in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| bits::ones(w).map(move |j| (i, j)))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = ZeroOneMatrix::zeros(self.cols, self.rows).expect("transposed dims");
        for (i, j) in self.ones() {
            t.set(j, i, true);
        }
        t
    }
}

impl std::fmt::Display for ZeroOneMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Pins pattern cell `(pattern_row, pattern_col)` onto host cell `(row, col)`.
#[derive(Debug, Clone, Copy)]
struct Pin {
    pattern_row: usize,
    pattern_col: usize,
    row: usize,
    col: usize,
}

/// Row-by-row backtracking. `allowed[b]` holds the host columns that can
/// still carry pattern column `b` given the rows chosen so far; columns are
/// then placed greedily leftmost, which is exact for increasing choices from
/// independent candidate sets.
struct Containment<'a> {
    host: &'a ZeroOneMatrix,
    pattern: &'a ZeroOneMatrix,
    pin: Option<Pin>,
    scratch: Vec<u64>,
}

impl<'a> Containment<'a> {
    fn new(host: &'a ZeroOneMatrix, pattern: &'a ZeroOneMatrix, pin: Option<Pin>) -> Self {
        let s = pattern.cols;
        let mut scratch = vec![low_mask(host.cols); (pattern.rows + 1) * s];
        if let Some(p) = pin {
            scratch[p.pattern_col] = bit(p.col);
        }
        Containment {
            host,
            pattern,
            pin,
            scratch,
        }
    }

    fn run(mut self) -> bool {
        if self.pattern.rows > self.host.rows || self.pattern.cols > self.host.cols {
            return false;
        }
        self.greedy(0) && self.rec(0, 0)
    }

    fn greedy(&self, level: usize) -> bool {
        let s = self.pattern.cols;
        let allowed = &self.scratch[level * s..(level + 1) * s];
        let mut next = 0;
        for &mask in allowed {
            let avail = mask & range_mask(next, self.host.cols - 1);
            if avail == 0 {
                return false;
            }
            next = avail.trailing_zeros() as usize + 1;
        }
        true
    }

    fn rec(&mut self, x: usize, lo: usize) -> bool {
        let r = self.pattern.rows;
        if x == r {
            return true;
        }
        let s = self.pattern.cols;
        let mut hi = self.host.rows - (r - x);
        let mut lo = lo;
        if let Some(p) = self.pin {
            if x == p.pattern_row {
                if p.row < lo || p.row > hi {
                    return false;
                }
                lo = p.row;
                hi = p.row;
            } else if x < p.pattern_row {
                match p.row.checked_sub(p.pattern_row - x) {
                    Some(h) => hi = hi.min(h),
                    None => return false,
                }
            }
        }
        let need = self.pattern.bits[x];
        for row in lo..=hi {
            let host_row = self.host.bits[row];
            let (cur, nxt) = self.scratch.split_at_mut((x + 1) * s);
            let cur = &cur[x * s..];
            for b in 0..s {
                nxt[b] = if need & bit(b) != 0 { cur[b] & host_row } else { cur[b] };
            }
            if self.greedy(x + 1) && self.rec(x + 1, row + 1) {
                return true;
            }
        }
        false
    }
}

/// Whether `host` has a submatrix, rows and columns in order, with a 1
/// wherever `pattern` has one.
pub fn matrix_contains(host: &ZeroOneMatrix, pattern: &ZeroOneMatrix) -> bool {
    Containment::new(host, pattern, None).run()
}

/// Containment restricted to copies that map some 1 of `pattern` onto the
/// host cell `(row, col)`.
pub fn contains_through(host: &ZeroOneMatrix, pattern: &ZeroOneMatrix, row: usize, col: usize) -> bool {
    pattern.ones().any(|(pattern_row, pattern_col)| {
        let pin = Pin {
            pattern_row,
            pattern_col,
            row,
            col,
        };
        Containment::new(host, pattern, Some(pin)).run()
    })
}

/// Same dimensions and every 1 of `pattern` is a 1 of `host`.
pub fn tightly_contains(host: &ZeroOneMatrix, pattern: &ZeroOneMatrix) -> bool {
    host.rows == pattern.rows
        && host.cols == pattern.cols
        && host.bits.iter().zip(&pattern.bits).all(|(&h, &p)| p & !h == 0)
}

/// `(s-1)m + (r-1)n - (r-1)(s-1)`, the least extremal number of any nonzero
/// `r x s` pattern.
pub fn minimalist_value(r: usize, s: usize, m: usize, n: usize) -> i64 {
    let (r, s, m, n) = (r as i64, s as i64, m as i64, n as i64);
    (s - 1) * m + (r - 1) * n - (r - 1) * (s - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub pattern: ZeroOneMatrix,
    pub m: usize,
    pub n: usize,
    pub value: usize,
    pub witness: ZeroOneMatrix,
    pub exhaustive: bool,
}

impl ExtremalResult {
    /// Re-checks the witness independently of the search.
    pub fn verify(&self) -> bool {
        self.witness.rows() == self.m
            && self.witness.cols() == self.n
            && self.witness.count_ones() == self.value
            && !matrix_contains(&self.witness, &self.pattern)
    }
}

struct ExtremalSearch<'a> {
    pattern: &'a ZeroOneMatrix,
    grid: ZeroOneMatrix,
    cells: usize,
    ones: usize,
    best: Option<usize>,
    best_grid: Option<ZeroOneMatrix>,
}

impl ExtremalSearch<'_> {
    fn go(&mut self, idx: usize) {
        if let Some(best) = self.best {
            if self.ones + (self.cells - idx) <= best {
                return;
            }
        }
        if idx == self.cells {
            self.best = Some(self.ones);
            self.best_grid = Some(self.grid.clone());
            return;
        }
        let (i, j) = (idx / self.grid.cols, idx % self.grid.cols);
        self.grid.set(i, j, true);
        if !contains_through(&self.grid, self.pattern, i, j) {
            self.ones += 1;
            self.go(idx + 1);
            self.ones -= 1;
        }
        self.grid.set(i, j, false);
        self.go(idx + 1);
    }
}

/// Exact `ex_A(m, n)`.
///
/// Cells are decided in row-major order, trying 1 before 0, so the first
/// optimum reached is the lexicographically greatest witness. A branch is cut
/// when its ones plus every undecided cell cannot beat the incumbent, or as
/// soon as the forced ones contain the pattern.
pub fn extremal_number(pattern: &ZeroOneMatrix, m: usize, n: usize) -> Result<ExtremalResult> {
    if pattern.is_zero() {
        return Err(Error::InvalidArgument(
            "extremal number of the zero matrix is undefined".into(),
        ));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("m and n must be positive".into()));
    }
    if m * n > EXTREMAL_CAPACITY {
        return Err(Error::Capacity(format!(
            "{m}x{n} exceeds the {EXTREMAL_CAPACITY}-cell limit for exact extremal numbers"
        )));
    }
    let mut search = ExtremalSearch {
        pattern,
        grid: ZeroOneMatrix::zeros(m, n)?,
        cells: m * n,
        ones: 0,
        best: None,
        best_grid: None,
    };
    search.go(0);
    let witness = search
        .best_grid
        .expect("the zero matrix always avoids a nonzero pattern");
    Ok(ExtremalResult {
        pattern: pattern.clone(),
        m,
        n,
        value: search.best.unwrap_or(0),
        witness,
        exhaustive: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowFailure {
    pub m: usize,
    pub n: usize,
    pub extremal: usize,
    pub formula: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCheck {
    pub holds: bool,
    pub window: (usize, usize),
    pub counterexample: Option<WindowFailure>,
}

/// Compares `ex_A(m, n)` with the minimalist formula for every
/// `r <= m <= m_max`, `s <= n <= n_max`. Holding on the window is evidence,
/// not a proof.
pub fn is_minimalist_window(pattern: &ZeroOneMatrix, m_max: usize, n_max: usize) -> Result<WindowCheck> {
    if pattern.is_zero() {
        return Err(Error::InvalidArgument("pattern must have a nonzero entry".into()));
    }
    if m_max * n_max > EXTREMAL_CAPACITY {
        return Err(Error::Capacity(format!(
            "window {m_max}x{n_max} exceeds the {EXTREMAL_CAPACITY}-cell limit"
        )));
    }
    let (r, s) = (pattern.rows(), pattern.cols());
    for m in r..=m_max {
        for n in s..=n_max {
            let ex = extremal_number(pattern, m, n)?.value;
            let formula = minimalist_value(r, s, m, n);
            if ex as i64 != formula {
                return Ok(WindowCheck {
                    holds: false,
                    window: (m_max, n_max),
                    counterexample: Some(WindowFailure {
                        m,
                        n,
                        extremal: ex,
                        formula,
                    }),
                });
            }
        }
    }
    Ok(WindowCheck {
        holds: true,
        window: (m_max, n_max),
        counterexample: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    FirstRow,
    LastRow,
    FirstCol,
    LastCol,
}

/// Appends a boundary row or column holding a single 1 at `index` (a column
/// index for rows, a row index for columns).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementaryOp {
    pub side: Side,
    pub index: usize,
}

impl ElementaryOp {
    /// Applies the operation, requiring the new 1 to sit orthogonally next to
    /// a 1 on the boundary it is added to.
    pub fn apply(&self, m: &ZeroOneMatrix) -> Result<ZeroOneMatrix> {
        let (r, s) = (m.rows(), m.cols());
        let adjacent = match self.side {
            Side::FirstRow => self.index < s && m.get(0, self.index),
            Side::LastRow => self.index < s && m.get(r - 1, self.index),
            Side::FirstCol => self.index < r && m.get(self.index, 0),
            Side::LastCol => self.index < r && m.get(self.index, s - 1),
        };
        if !adjacent {
            return Err(Error::InvalidArgument(format!(
                "{self:?} does not place its 1 next to an existing 1"
            )));
        }
        let out = match self.side {
            Side::FirstRow | Side::LastRow => {
                let mut out = ZeroOneMatrix::zeros(r + 1, s)?;
                let shift = usize::from(self.side == Side::FirstRow);
                for (i, j) in m.ones() {
                    out.set(i + shift, j, true);
                }
                let new_row = if shift == 1 { 0 } else { r };
                out.set(new_row, self.index, true);
                out
            }
            Side::FirstCol | Side::LastCol => {
                let mut out = ZeroOneMatrix::zeros(r, s + 1)?;
                let shift = usize::from(self.side == Side::FirstCol);
                for (i, j) in m.ones() {
                    out.set(i, j + shift, true);
                }
                let new_col = if shift == 1 { 0 } else { s };
                out.set(self.index, new_col, true);
                out
            }
        };
        Ok(out)
    }
}

/// Every single elementary operation applicable to `m`, with duplicate
/// results removed (first occurrence kept).
pub fn elementary_moves(m: &ZeroOneMatrix) -> Vec<(ElementaryOp, ZeroOneMatrix)> {
    let (r, s) = (m.rows(), m.cols());
    let mut ops = Vec::new();
    for j in bits::ones(m.row_word(0)) {
        ops.push(ElementaryOp {
            side: Side::FirstRow,
            index: j,
        });
    }
    for j in bits::ones(m.row_word(r - 1)) {
        ops.push(ElementaryOp {
            side: Side::LastRow,
            index: j,
        });
    }
    for i in (0..r).filter(|&i| m.get(i, 0)) {
        ops.push(ElementaryOp {
            side: Side::FirstCol,
            index: i,
        });
    }
    for i in (0..r).filter(|&i| m.get(i, s - 1)) {
        ops.push(ElementaryOp {
            side: Side::LastCol,
            index: i,
        });
    }
    let mut out: Vec<(ElementaryOp, ZeroOneMatrix)> = Vec::new();
    for op in ops {
        let next = op.apply(m).expect("op built from an existing 1");
        if !out.iter().any(|(_, seen)| *seen == next) {
            out.push((op, next));
        }
    }
    out
}

pub fn elementary_operations(m: &ZeroOneMatrix) -> Vec<ZeroOneMatrix> {
    elementary_moves(m).into_iter().map(|(_, x)| x).collect()
}

/// A sequence of elementary operations from the 1x1 identity to a matrix
/// that tightly contains the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub ops: Vec<ElementaryOp>,
    pub derived: ZeroOneMatrix,
}

impl Derivation {
    /// Replays the operations from `[[1]]`.
    pub fn replay(&self) -> Result<ZeroOneMatrix> {
        let mut m = ZeroOneMatrix::from_rows(&[&[1]])?;
        for op in &self.ops {
            m = op.apply(&m)?;
        }
        Ok(m)
    }

    pub fn certifies(&self, target: &ZeroOneMatrix) -> bool {
        matches!(self.replay(), Ok(m) if m == self.derived && tightly_contains(&m, target))
    }
}

/// Breadth-first search over elementary operations from `[[1]]`, never
/// exceeding the target's dimensions. `Ok(None)` only means no derivation
/// exists, not that the target fails to be minimalist.
pub fn derive_minimalist(target: &ZeroOneMatrix, max_steps: usize) -> Result<Option<Derivation>> {
    if target.is_zero() {
        return Err(Error::InvalidArgument("target must have a nonzero entry".into()));
    }
    let start = ZeroOneMatrix::from_rows(&[&[1]])?;
    let mut parent: HashMap<ZeroOneMatrix, Option<(ZeroOneMatrix, ElementaryOp)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut steps = 0;
    while let Some(cur) = queue.pop_front() {
        if tightly_contains(&cur, target) {
            let mut ops = Vec::new();
            let mut node = cur.clone();
            while let Some(Some((prev, op))) = parent.get(&node) {
                ops.push(*op);
                node = prev.clone();
            }
            ops.reverse();
            return Ok(Some(Derivation { ops, derived: cur }));
        }
        steps += 1;
        if steps > max_steps {
            return Err(Error::StepBudgetExceeded(max_steps));
        }
        for (op, next) in elementary_moves(&cur) {
            if next.rows() > target.rows() || next.cols() > target.cols() {
                continue;
            }
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), op)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// The 3x3 minimalist matrix that no chain of elementary operations reaches.
pub fn sporadic_3x3() -> ZeroOneMatrix {
    ZeroOneMatrix::from_rows(&[&[0, 1, 0], &[1, 0, 0], &[1, 0, 1]]).expect("static matrix")
}
