use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use super::{LinalgError, SparseVec};
use crate::scalar::Rational;

/// Label for the index set along one axis of a matrix.
///
/// `Plain` is compatible with every label of the same length; two `Named`
/// labels are compatible only when equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub enum IndexSpace {
    #[default]
    Plain,
    Named(Arc<str>),
}

impl IndexSpace {
    pub fn named(label: impl Into<String>) -> Self {
        IndexSpace::Named(Arc::from(label.into()))
    }

    /// The k-subsets of a v-set, in colex order.
    pub fn subsets(v: usize, k: usize) -> Self {
        Self::named(format!("C({v},{k})"))
    }

    /// Lexicographic pairs `(a, b)` with `a` major.
    pub fn pairs(a: &IndexSpace, b: &IndexSpace) -> Self {
        match (a, b) {
            (IndexSpace::Plain, IndexSpace::Plain) => IndexSpace::Plain,
            _ => Self::named(format!("{a}x{b}")),
        }
    }

    pub fn compatible(&self, other: &IndexSpace) -> bool {
        match (self, other) {
            (IndexSpace::Plain, _) | (_, IndexSpace::Plain) => true,
            (IndexSpace::Named(a), IndexSpace::Named(b)) => a == b,
        }
    }
}

impl fmt::Display for IndexSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSpace::Plain => write!(f, "_"),
            IndexSpace::Named(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for IndexSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Block decomposition of an index set into consecutive ranges.
pub trait BlockLayout {
    fn block_count(&self) -> usize;
    fn block_range(&self, i: usize) -> Range<usize>;
    fn total_size(&self) -> usize;
    fn space(&self) -> IndexSpace {
        IndexSpace::Plain
    }
    fn block_space(&self, _i: usize) -> IndexSpace {
        IndexSpace::Plain
    }
}

/// Immutable sparse matrix over exact rationals, stored row-compressed.
///
/// Equality compares shape and entries; index-space labels are metadata.
#[derive(Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    row_space: IndexSpace,
    col_space: IndexSpace,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            row_space: IndexSpace::Plain,
            col_space: IndexSpace::Plain,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_sorted_rows(n, n, (0..n).map(|i| vec![(i, Rational::one())]))
    }

    pub fn all_ones(rows: usize, cols: usize) -> Self {
        Self::from_sorted_rows(
            rows,
            cols,
            (0..rows).map(|_| (0..cols).map(|c| (c, Rational::one())).collect()),
        )
    }

    /// Builds from `(row, col, value)` triplets in any order; duplicates are
    /// summed and zeros dropped. Panics on out-of-range coordinates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside {rows}x{cols}"
            );
            per_row[r].push((c, v));
        }
        let rows_iter = per_row.into_iter().map(|mut row| {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += &v,
                    _ => merged.push((c, v)),
                }
            }
            merged
        });
        Self::from_sorted_rows(rows, cols, rows_iter)
    }

    /// Rows must have strictly increasing column indices.
    pub(crate) fn from_sorted_rows(
        rows: usize,
        cols: usize,
        row_entries: impl IntoIterator<Item = Vec<(usize, Rational)>>,
    ) -> Self {
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in row_entries {
            for (c, v) in row {
                debug_assert!(c < cols);
                if !v.is_zero() {
                    col_idx.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        assert_eq!(row_ptr.len(), rows + 1, "row count mismatch");
        ExactMatrix {
            rows,
            cols,
            row_space: IndexSpace::Plain,
            col_space: IndexSpace::Plain,
            row_ptr,
            col_idx,
            vals,
        }
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_sorted_rows(
            rows.len(),
            cols,
            rows.iter().map(|row| {
                assert_eq!(row.len(), cols, "ragged rows");
                row.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, Rational::from_int(v)))
                    .collect()
            }),
        )
    }

    pub fn with_spaces(mut self, row_space: IndexSpace, col_space: IndexSpace) -> Self {
        self.row_space = row_space;
        self.col_space = col_space;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row_space(&self) -> &IndexSpace {
        &self.row_space
    }

    pub fn col_space(&self) -> &IndexSpace {
        &self.col_space
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Rational)> {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()]
            .iter()
            .copied()
            .zip(&self.vals[span])
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.col_idx[span.clone()].binary_search(&c) {
            Ok(pos) => self.vals[span.start + pos].clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for r in 0..self.rows.min(self.cols) {
            t += &self.get(r, r);
        }
        t
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            per_row[c].push((r, v.clone()));
        }
        Self::from_sorted_rows(self.cols, self.rows, per_row)
            .with_spaces(self.col_space.clone(), self.row_space.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn scale(&self, c: &Rational) -> ExactMatrix {
        if c.is_zero() {
            return ExactMatrix::zeros(self.rows, self.cols)
                .with_spaces(self.row_space.clone(), self.col_space.clone());
        }
        let mut out = self.clone();
        for v in &mut out.vals {
            *v = &*v * c;
        }
        out
    }

    fn check_same_shape(&self, other: &ExactMatrix, op: &'static str) -> Result<(), LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        if !self.row_space.compatible(&other.row_space) {
            return Err(LinalgError::Space {
                op,
                left: self.row_space.to_string(),
                right: other.row_space.to_string(),
            });
        }
        if !self.col_space.compatible(&other.col_space) {
            return Err(LinalgError::Space {
                op,
                left: self.col_space.to_string(),
                right: other.col_space.to_string(),
            });
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn add_scaled(
        &self,
        c: &Rational,
        other: &ExactMatrix,
    ) -> Result<ExactMatrix, LinalgError> {
        self.check_same_shape(other, "add")?;
        let rows = (0..self.rows).map(|r| {
            let mut out = Vec::new();
            let mut a = self.row(r).peekable();
            let mut b = other.row(r).peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (Some(&(ca, va)), Some(&(cb, vb))) => {
                        if ca < cb {
                            out.push((ca, va.clone()));
                            a.next();
                        } else if cb < ca {
                            out.push((cb, vb * c));
                            b.next();
                        } else {
                            out.push((ca, va + &(vb * c)));
                            a.next();
                            b.next();
                        }
                    }
                    (Some(&(ca, va)), None) => {
                        out.push((ca, va.clone()));
                        a.next();
                    }
                    (None, Some(&(cb, vb))) => {
                        out.push((cb, vb * c));
                        b.next();
                    }
                    (None, None) => break,
                }
            }
            out
        });
        Ok(
            Self::from_sorted_rows(self.rows, self.cols, rows.collect::<Vec<_>>())
                .with_spaces(self.row_space.clone(), self.col_space.clone()),
        )
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.add_scaled(&Rational::from_int(-1), other)
    }

    pub fn mat_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        if !self.col_space.compatible(&other.row_space) {
            return Err(LinalgError::Space {
                op: "mat_mul",
                left: self.col_space.to_string(),
                right: other.row_space.to_string(),
            });
        }
        let mut acc: Vec<Option<Rational>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    let prod = a * b;
                    match &mut acc[c] {
                        Some(v) => *v += &prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let row: Vec<(usize, Rational)> = touched
                .drain(..)
                .filter_map(|c| acc[c].take().map(|v| (c, v)))
                .collect();
            rows.push(row);
        }
        Ok(Self::from_sorted_rows(self.rows, other.cols, rows)
            .with_spaces(self.row_space.clone(), other.col_space.clone()))
    }

    /// Kronecker product; rows are indexed by pairs with `self`'s row major.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Vec::with_capacity(rows);
        for ra in 0..self.rows {
            for rb in 0..other.rows {
                let mut row = Vec::new();
                for (ca, va) in self.row(ra) {
                    for (cb, vb) in other.row(rb) {
                        row.push((ca * other.cols + cb, va * vb));
                    }
                }
                out.push(row);
            }
        }
        Self::from_sorted_rows(rows, cols, out).with_spaces(
            IndexSpace::pairs(&self.row_space, &other.row_space),
            IndexSpace::pairs(&self.col_space, &other.col_space),
        )
    }

    /// Submatrix on the given row and column ranges.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> ExactMatrix {
        assert!(
            rows.end <= self.rows && cols.end <= self.cols,
            "submatrix out of bounds"
        );
        let out = rows.clone().map(|r| {
            self.row(r)
                .filter(|(c, _)| cols.contains(c))
                .map(|(c, v)| (c - cols.start, v.clone()))
                .collect::<Vec<_>>()
        });
        Self::from_sorted_rows(rows.len(), cols.len(), out.collect::<Vec<_>>())
    }

    /// Places `self` at `(row_off, col_off)` inside a zero matrix.
    pub fn placed(&self, rows: usize, cols: usize, row_off: usize, col_off: usize) -> ExactMatrix {
        assert!(row_off + self.rows <= rows && col_off + self.cols <= cols);
        let out = (0..rows).map(|r| {
            if r < row_off || r >= row_off + self.rows {
                Vec::new()
            } else {
                self.row(r - row_off)
                    .map(|(c, v)| (c + col_off, v.clone()))
                    .collect()
            }
        });
        Self::from_sorted_rows(rows, cols, out.collect::<Vec<_>>())
    }

    /// Block `(i, j)` of a square matrix over `layout`.
    pub fn extract_block(
        &self,
        i: usize,
        j: usize,
        layout: &impl BlockLayout,
    ) -> Result<ExactMatrix, LinalgError> {
        if self.rows != layout.total_size() || self.cols != layout.total_size() {
            return Err(LinalgError::Layout {
                expected: (layout.total_size(), layout.total_size()),
                found: self.shape(),
            });
        }
        Ok(self
            .submatrix(layout.block_range(i), layout.block_range(j))
            .with_spaces(layout.block_space(i), layout.block_space(j)))
    }

    /// Returns `true` if every entry outside block `(i, j)` is zero.
    pub fn supported_in_block(&self, i: usize, j: usize, layout: &impl BlockLayout) -> bool {
        let rr = layout.block_range(i);
        let cr = layout.block_range(j);
        self.iter()
            .all(|(r, c, _)| rr.contains(&r) && cr.contains(&c))
    }

    /// First cell where `self` and `other` differ, with both values.
    pub fn first_difference(
        &self,
        other: &ExactMatrix,
    ) -> Option<(usize, usize, Rational, Rational)> {
        if self.shape() != other.shape() {
            return Some((self.rows, self.cols, Rational::zero(), Rational::zero()));
        }
        for r in 0..self.rows {
            let a: Vec<_> = self.row(r).collect();
            let b: Vec<_> = other.row(r).collect();
            if a != b {
                let cols = a.iter().chain(b.iter()).map(|(c, _)| *c);
                let c = cols
                    .filter(|&c| self.get(r, c) != other.get(r, c))
                    .min()
                    .expect("rows differ");
                return Some((r, c, self.get(r, c), other.get(r, c)));
            }
        }
        None
    }

    /// Row-major vectorization: entry `(r, c)` becomes coordinate `r * cols + c`.
    pub fn vectorize(&self) -> SparseVec {
        let idx = self.iter().map(|(r, c, _)| r * self.cols + c).collect();
        SparseVec::from_sorted(idx, self.vals.clone())
    }

    pub fn from_vector(rows: usize, cols: usize, v: &SparseVec) -> ExactMatrix {
        let mut out: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (k, val) in v.iter() {
            assert!(k < rows * cols, "coordinate {k} outside {rows}x{cols}");
            out[k / cols].push((k % cols, val.clone()));
        }
        Self::from_sorted_rows(rows, cols, out)
    }

    /// Dense integer view; panics on non-integer entries. Intended for small
    /// matrices in tests and examples.
    pub fn to_rows_i64(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            assert!(v.is_integer(), "non-integer entry {v}");
            out[r][c] = i64::try_from(v.numer()).expect("entry overflows i64");
        }
        out
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.row_ptr == other.row_ptr
            && self.col_idx == other.col_idx
            && self.vals == other.vals
    }
}

impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} [{} -> {}], nnz = {}",
            self.rows,
            self.cols,
            self.row_space,
            self.col_space,
            self.nnz()
        )?;
        if self.rows <= 12 && self.cols <= 12 {
            for r in 0..self.rows {
                let cells: Vec<String> =
                    (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Embeds `m` as block `(i, j)` of a square matrix over `layout`.
pub fn embed_block(
    m: &ExactMatrix,
    i: usize,
    j: usize,
    layout: &impl BlockLayout,
) -> Result<ExactMatrix, LinalgError> {
    if i >= layout.block_count() || j >= layout.block_count() {
        return Err(LinalgError::BlockIndex {
            i,
            j,
            blocks: layout.block_count(),
        });
    }
    let rr = layout.block_range(i);
    let cr = layout.block_range(j);
    if m.shape() != (rr.len(), cr.len()) {
        return Err(LinalgError::BlockSize {
            i,
            j,
            expected: (rr.len(), cr.len()),
            found: m.shape(),
        });
    }
    let n = layout.total_size();
    Ok(m.placed(n, n, rr.start, cr.start)
        .with_spaces(layout.space(), layout.space()))
}
