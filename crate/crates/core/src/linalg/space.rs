use std::collections::BTreeMap;

use super::{ExactMatrix, LinalgError};
use crate::scalar::Rational;

/// Sparse vector with strictly increasing coordinates and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    idx: Vec<usize>,
    val: Vec<Rational>,
}

impl SparseVec {
    pub(crate) fn from_sorted(idx: Vec<usize>, val: Vec<Rational>) -> Self {
        debug_assert_eq!(idx.len(), val.len());
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(val.iter().all(|v| !v.is_zero()));
        SparseVec { idx, val }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut idx = Vec::with_capacity(pairs.len());
        let mut val: Vec<Rational> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            if idx.last() == Some(&i) {
                let last = val.last_mut().unwrap();
                *last += &v;
            } else {
                idx.push(i);
                val.push(v);
            }
        }
        let (idx, val) = idx
            .into_iter()
            .zip(val)
            .filter(|(_, v)| !v.is_zero())
            .unzip();
        SparseVec { idx, val }
    }

    pub fn nnz(&self) -> usize {
        self.idx.len()
    }

    pub fn is_zero(&self) -> bool {
        self.idx.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.idx
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.idx.iter().copied().zip(&self.val)
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.idx.binary_search(&i).ok().map(|p| &self.val[p])
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.idx.first().map(|&i| (i, &self.val[0]))
    }

    pub fn scale(&mut self, c: &Rational) {
        assert!(!c.is_zero(), "scaling by zero");
        for v in &mut self.val {
            *v = &*v * c;
        }
    }

    /// `self - c * other`, by merging.
    pub fn sub_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        let mut idx = Vec::with_capacity(self.nnz() + other.nnz());
        let mut val = Vec::with_capacity(self.nnz() + other.nnz());
        let (mut a, mut b) = (0, 0);
        while a < self.nnz() || b < other.nnz() {
            let ia = self.idx.get(a).copied().unwrap_or(usize::MAX);
            let ib = other.idx.get(b).copied().unwrap_or(usize::MAX);
            let (i, v) = if ia < ib {
                a += 1;
                (ia, self.val[a - 1].clone())
            } else if ib < ia {
                b += 1;
                (ib, -(c * &other.val[b - 1]))
            } else {
                a += 1;
                b += 1;
                (ia, self.val[a - 1].sub_mul(c, &other.val[b - 1]))
            };
            if !v.is_zero() {
                idx.push(i);
                val.push(v);
            }
        }
        SparseVec { idx, val }
    }
}

/// Dense scratch accumulator reused across reductions.
#[derive(Default)]
struct Accumulator {
    slots: Vec<Option<Rational>>,
    touched: Vec<usize>,
}

impl Accumulator {
    fn ensure(&mut self, len: usize) {
        if self.slots.len() < len {
            self.slots.resize(len, None);
        }
    }

    fn scatter(&mut self, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.slots[i] = Some(x.clone());
            self.touched.push(i);
        }
    }

    fn sub_scaled(&mut self, c: &Rational, v: &SparseVec) {
        for (i, x) in v.iter() {
            match &mut self.slots[i] {
                Some(cur) => *cur = cur.sub_mul(c, x),
                slot @ None => {
                    *slot = Some(-(c * x));
                    self.touched.push(i);
                }
            }
        }
    }

    fn gather(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut idx = Vec::with_capacity(self.touched.len());
        let mut val = Vec::with_capacity(self.touched.len());
        for i in self.touched.drain(..) {
            if let Some(v) = self.slots[i].take() {
                if !v.is_zero() {
                    idx.push(i);
                    val.push(v);
                }
            }
        }
        SparseVec { idx, val }
    }
}

/// Subspace of `rows x cols` matrices, held as a reduced row-echelon basis of
/// row-major vectorizations.
///
/// Every basis vector has leading coefficient 1 at its pivot and is zero at
/// every other pivot, so the basis is the unique reduced echelon basis of the
/// space and two spaces are equal exactly when their bases coincide.
pub struct MatrixSpace {
    rows: usize,
    cols: usize,
    basis: BTreeMap<usize, SparseVec>,
    scratch: Accumulator,
}

impl Clone for MatrixSpace {
    fn clone(&self) -> Self {
        MatrixSpace {
            rows: self.rows,
            cols: self.cols,
            basis: self.basis.clone(),
            scratch: Accumulator::default(),
        }
    }
}

impl std::fmt::Debug for MatrixSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MatrixSpace({}x{}, dim {})",
            self.rows,
            self.cols,
            self.dim()
        )
    }
}

impl MatrixSpace {
    pub fn new(rows: usize, cols: usize) -> Self {
        MatrixSpace {
            rows,
            cols,
            basis: BTreeMap::new(),
            scratch: Accumulator::default(),
        }
    }

    /// Span of the given matrices.
    pub fn spanned_by<'a>(
        rows: usize,
        cols: usize,
        mats: impl IntoIterator<Item = &'a ExactMatrix>,
    ) -> Result<Self, LinalgError> {
        let mut s = Self::new(rows, cols);
        for m in mats {
            s.insert(m)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.keys().copied()
    }

    /// Basis vectors in increasing pivot order.
    pub fn basis_vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.basis.values()
    }

    pub fn basis_matrices(&self) -> impl Iterator<Item = ExactMatrix> + '_ {
        self.basis
            .values()
            .map(|v| ExactMatrix::from_vector(self.rows, self.cols, v))
    }

    fn check(&self, m: &ExactMatrix) -> Result<(), LinalgError> {
        if m.shape() != (self.rows, self.cols) {
            return Err(LinalgError::Ambient {
                expected: (self.rows, self.cols),
                found: m.shape(),
            });
        }
        Ok(())
    }

    fn reduce_with(
        basis: &BTreeMap<usize, SparseVec>,
        acc: &mut Accumulator,
        len: usize,
        v: &SparseVec,
    ) -> SparseVec {
        let coefs: Vec<(&SparseVec, Rational)> = v
            .iter()
            .filter_map(|(i, x)| basis.get(&i).map(|b| (b, x.clone())))
            .collect();
        if coefs.is_empty() {
            return v.clone();
        }
        acc.ensure(len);
        acc.scatter(v);
        for (b, c) in &coefs {
            acc.sub_scaled(c, b);
        }
        acc.gather()
    }

    /// Residue of `v` after elimination against the basis; zero iff `v` lies
    /// in the space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::default();
        Self::reduce_with(&self.basis, &mut acc, self.rows * self.cols, v)
    }

    pub fn contains(&self, m: &ExactMatrix) -> Result<bool, LinalgError> {
        self.check(m)?;
        Ok(self.reduce(&m.vectorize()).is_zero())
    }

    pub fn contains_vector(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn insert(&mut self, m: &ExactMatrix) -> Result<bool, LinalgError> {
        self.check(m)?;
        Ok(self.insert_vector(&m.vectorize()).is_some())
    }

    /// Inserts a vectorized matrix. Returns the new normalized basis vector
    /// (as it was at insertion time) or `None` if `v` was already in the span.
    pub fn insert_vector(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let len = self.rows * self.cols;
        if let Some(&last) = v.indices().last() {
            assert!(last < len, "coordinate {last} outside ambient {len}");
        }
        let mut r = Self::reduce_with(&self.basis, &mut self.scratch, len, v);
        let (pivot, lead) = match r.leading() {
            Some((p, lead)) => (p, lead.clone()),
            None => return None,
        };
        if !lead.is_one() {
            r.scale(&lead.recip().expect("nonzero lead"));
        }
        for b in self.basis.values_mut() {
            if let Some(c) = b.get(pivot).cloned() {
                *b = b.sub_scaled(&c, &r);
            }
        }
        self.basis.insert(pivot, r.clone());
        Some(r)
    }

    /// Equality of subspaces via their reduced echelon bases.
    pub fn equals(&self, other: &MatrixSpace) -> bool {
        self.ambient() == other.ambient() && self.basis == other.basis
    }

    /// `true` if every basis vector of `other` lies in `self`.
    pub fn contains_space(&self, other: &MatrixSpace) -> bool {
        self.first_missing(other).is_none()
    }

    /// A basis element of `other` not contained in `self`, if any.
    pub fn first_missing(&self, other: &MatrixSpace) -> Option<ExactMatrix> {
        other
            .basis
            .values()
            .find(|v| !self.contains_vector(v))
            .map(|v| ExactMatrix::from_vector(other.rows, other.cols, v))
    }
}
