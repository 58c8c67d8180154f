//! Inclusion matrices `W_{i,j}(v)` and intersection matrices `C^l_{i,j}(v)`,
//! `H^l_{i,j}(v)`, plus an exhaustive checker for the identities relating
//! them.
//!
//! Rows are indexed by the i-subsets and columns by the j-subsets of a
//! v-set, both in colex order. `C^l` has entry `C(|y ∩ z|, l)` and `H^l` is
//! the indicator of `|y ∩ z| = l`; both vanish for `l` outside the feasible
//! range.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{ExactMatrix, IndexSpace};
use crate::scalar::Rational;
use crate::subsets::{choose_i64, enumerate_subsets, intersect_size};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IntersectionKind {
    W,
    C,
    H,
}

/// Description of one constructible matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntersectionSpec {
    pub kind: IntersectionKind,
    pub i: usize,
    pub j: usize,
    /// Level parameter; ignored for `W`.
    pub l: i64,
    pub v: usize,
}

impl IntersectionSpec {
    pub fn w(i: usize, j: usize, v: usize) -> Self {
        IntersectionSpec {
            kind: IntersectionKind::W,
            i,
            j,
            l: 0,
            v,
        }
    }

    pub fn c(i: usize, j: usize, l: i64, v: usize) -> Self {
        IntersectionSpec {
            kind: IntersectionKind::C,
            i,
            j,
            l,
            v,
        }
    }

    pub fn h(i: usize, j: usize, l: i64, v: usize) -> Self {
        IntersectionSpec {
            kind: IntersectionKind::H,
            i,
            j,
            l,
            v,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.i <= self.v && self.j <= self.v
    }

    pub fn build(&self) -> ExactMatrix {
        match self.kind {
            IntersectionKind::W => build_w(self.i, self.j, self.v),
            IntersectionKind::C => build_c(self.i, self.j, self.l, self.v),
            IntersectionKind::H => build_h(self.i, self.j, self.l, self.v),
        }
    }
}

impl fmt::Display for IntersectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            IntersectionKind::W => write!(f, "W_{{{},{}}}({})", self.i, self.j, self.v),
            IntersectionKind::C => write!(f, "C^{}_{{{},{}}}({})", self.l, self.i, self.j, self.v),
            IntersectionKind::H => write!(f, "H^{}_{{{},{}}}({})", self.l, self.i, self.j, self.v),
        }
    }
}

/// Feasible intersection sizes of an i-subset and a j-subset of a v-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRange {
    pub lo: i64,
    pub hi: i64,
}

impl LevelRange {
    pub fn new(i: usize, j: usize, v: usize) -> Self {
        let (i, j, v) = (i as i64, j as i64, v as i64);
        LevelRange {
            lo: (i + j - v).max(0),
            hi: i.min(j),
        }
    }

    pub fn contains(&self, g: i64) -> bool {
        self.lo <= g && g <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// `min(i,j) - max(0, i+j-v) + 1`, floored at zero.
pub fn level_count(i: usize, j: usize, v: usize) -> usize {
    LevelRange::new(i, j, v).len()
}

fn build_by_intersection(
    i: usize,
    j: usize,
    v: usize,
    entry: impl Fn(usize) -> i64,
) -> ExactMatrix {
    let rows = enumerate_subsets(v, i);
    let cols = enumerate_subsets(v, j);
    let per_row = rows.iter().map(|y| {
        cols.iter()
            .enumerate()
            .map(|(c, z)| {
                (
                    c,
                    Rational::from_int(entry(intersect_size(y, z).expect("same ground"))),
                )
            })
            .collect::<Vec<_>>()
    });
    ExactMatrix::from_sorted_rows(rows.len(), cols.len(), per_row.collect::<Vec<_>>())
        .with_spaces(IndexSpace::subsets(v, i), IndexSpace::subsets(v, j))
}

/// `W_{i,j}(v)`: entry 1 iff the row subset is contained in the column subset.
pub fn build_w(i: usize, j: usize, v: usize) -> ExactMatrix {
    build_by_intersection(i, j, v, |t| i64::from(t == i))
}

/// `C^l_{i,j}(v)`: entry `C(|y ∩ z|, l)`.
pub fn build_c(i: usize, j: usize, l: i64, v: usize) -> ExactMatrix {
    build_by_intersection(i, j, v, |t| choose_i64(t as i64, l))
}

/// `H^l_{i,j}(v)`: entry 1 iff `|y ∩ z| = l`.
pub fn build_h(i: usize, j: usize, l: i64, v: usize) -> ExactMatrix {
    build_by_intersection(i, j, v, |t| i64::from(t as i64 == l))
}

/// Identities checked by [`verify_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `W_{i,j} W_{j,k} = C(k-i, j-i) W_{i,k}`.
    InclusionProduct,
    /// `C^l_{i,j} = sum_{g=l}^{min(i,j)} C(g,l) H^g_{i,j}`.
    LevelDecomposition,
    /// `W_{i,j}^t W_{i,k} = C^i_{j,k}`.
    TransposeInclusionProduct,
    /// `C^l_{i,j} W_{j,k} = C(k-l, j-l) C^l_{i,k}`.
    IntersectionInclusionProduct,
    /// `W_{i,k} W_{j,k}^t = sum_{l=max(0,i+j-k)}^{min(i,j)} C(v-i-j, k-i-j+l) C^l_{i,j}`.
    InclusionOuterProduct,
    /// `W_{i,j} C^l_{j,k} = sum_{h=max(0,i+l-j)}^{min(l,i)} C(v-l-i, j-l-i+h) C(k-h, l-h) C^h_{i,k}`.
    InclusionIntersectionProduct,
    /// As [`Identity::InclusionIntersectionProduct`] but with lower limit
    /// `max(0, l+j-i)`, which drops terms in general. Kept as an erratum
    /// probe for that variant of the formula.
    InclusionIntersectionAltLimit,
    /// `C^l_{i,j} C^s_{j,k} = sum_h C(v-l-s, j-l-s+h) C(i-h, l-h) C(k-h, s-h) C^h_{i,k}`,
    /// `h` from `max(0, l+s-j)` to `min(l,s)`.
    IntersectionProduct,
    /// `W_{i,i+1} W_{j,i+1}^t = (v-i-j) C^j_{i,j} + C^{j-1}_{i,j}` for `j <= i+1`.
    AdjacentInclusion,
    /// `W_{i,k} W_{j,k}^t = sum_{s=0}^{min(k-i,j)} C(v-i-j, k-i-s) C^{j-s}_{i,j}`.
    InclusionGram,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::InclusionProduct,
        Identity::LevelDecomposition,
        Identity::TransposeInclusionProduct,
        Identity::IntersectionInclusionProduct,
        Identity::InclusionOuterProduct,
        Identity::InclusionIntersectionProduct,
        Identity::InclusionIntersectionAltLimit,
        Identity::IntersectionProduct,
        Identity::AdjacentInclusion,
        Identity::InclusionGram,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::InclusionProduct => "inclusion_product",
            Identity::LevelDecomposition => "level_decomposition",
            Identity::TransposeInclusionProduct => "transpose_inclusion_product",
            Identity::IntersectionInclusionProduct => "intersection_inclusion_product",
            Identity::InclusionOuterProduct => "inclusion_outer_product",
            Identity::InclusionIntersectionProduct => "inclusion_intersection_product",
            Identity::InclusionIntersectionAltLimit => "inclusion_intersection_alt_limit",
            Identity::IntersectionProduct => "intersection_product",
            Identity::AdjacentInclusion => "adjacent_inclusion",
            Identity::InclusionGram => "inclusion_gram",
        }
    }

    /// Probes for a suspected misprinted variant: a failure is an erratum, not a defect.
    pub fn is_erratum_probe(&self) -> bool {
        matches!(self, Identity::InclusionIntersectionAltLimit)
    }

    /// Parameter names used by this identity, in display order.
    pub fn parameter_names(&self) -> &'static [&'static str] {
        match self {
            Identity::InclusionProduct | Identity::TransposeInclusionProduct => {
                &["v", "i", "j", "k"]
            }
            Identity::LevelDecomposition => &["v", "i", "j", "l"],
            Identity::IntersectionInclusionProduct
            | Identity::InclusionIntersectionProduct
            | Identity::InclusionIntersectionAltLimit => &["v", "i", "j", "k", "l"],
            Identity::InclusionOuterProduct | Identity::InclusionGram => &["v", "i", "j", "k"],
            Identity::IntersectionProduct => &["v", "i", "j", "k", "l", "s"],
            Identity::AdjacentInclusion => &["v", "i", "j"],
        }
    }

    /// Parameter ranges on which the identity is asserted.
    ///
    /// Indices lie in `0..=v` and level parameters in their natural ranges.
    /// Where a coefficient is a binomial with upper argument such as `v-i-j`,
    /// that argument is required to be nonnegative: the out-of-range-is-zero
    /// convention for binomials gives no meaning to negative upper arguments.
    pub fn in_range(&self, p: &IdentityParams) -> bool {
        let IdentityParams { v, i, j, k, l, s } = *p;
        let idx = |x: i64| (0..=v).contains(&x);
        if v < 0 {
            return false;
        }
        match self {
            Identity::InclusionProduct => idx(i) && idx(j) && idx(k) && i <= j && j <= k,
            Identity::LevelDecomposition => idx(i) && idx(j) && l >= -1 && l <= i.min(j) + 1,
            Identity::TransposeInclusionProduct => idx(i) && idx(j) && idx(k),
            Identity::IntersectionInclusionProduct => {
                idx(i) && idx(j) && idx(k) && 0 <= l && l <= i.min(j) && l <= k
            }
            Identity::InclusionOuterProduct | Identity::InclusionGram => {
                idx(i) && idx(j) && idx(k) && i <= k && j <= k && i + j <= v
            }
            Identity::InclusionIntersectionProduct | Identity::InclusionIntersectionAltLimit => {
                idx(i) && idx(j) && idx(k) && i <= j && 0 <= l && l <= j.min(k) && i + l <= v
            }
            Identity::IntersectionProduct => {
                idx(i)
                    && idx(j)
                    && idx(k)
                    && 0 <= l
                    && l <= i.min(j)
                    && 0 <= s
                    && s <= j.min(k)
                    && l + s <= v
            }
            Identity::AdjacentInclusion => idx(i) && idx(j) && i < v && j <= i + 1,
        }
    }

    /// Every in-range parameter tuple for ground sets of size exactly `v`.
    pub fn tuples(&self, v: usize) -> Vec<IdentityParams> {
        let v = v as i64;
        let mut out = Vec::new();
        let used = self.parameter_names();
        let span = |name: &str| -> Vec<i64> {
            if used.contains(&name) {
                (-1..=v + 1).collect()
            } else {
                vec![0]
            }
        };
        for i in span("i") {
            for j in span("j") {
                for k in span("k") {
                    for l in span("l") {
                        for s in span("s") {
                            let p = IdentityParams { v, i, j, k, l, s };
                            if self.in_range(&p) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters for an identity instance; unused fields are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IdentityParams {
    pub v: i64,
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub l: i64,
    pub s: i64,
}

impl IdentityParams {
    pub fn get(&self, name: &str) -> i64 {
        match name {
            "v" => self.v,
            "i" => self.i,
            "j" => self.j,
            "k" => self.k,
            "l" => self.l,
            "s" => self.s,
            _ => panic!("unknown parameter {name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("parameters {params:?} are outside the range of {identity}")]
    OutOfRange {
        identity: Identity,
        params: IdentityParams,
    },
}

/// Memoizes constructed matrices for one ground-set size.
#[derive(Default)]
pub struct MatrixCache {
    cache: HashMap<IntersectionSpec, Arc<ExactMatrix>>,
}

impl MatrixCache {
    pub fn get(&mut self, spec: IntersectionSpec) -> Arc<ExactMatrix> {
        self.cache
            .entry(spec)
            .or_insert_with(|| Arc::new(spec.build()))
            .clone()
    }

    fn w(&mut self, i: i64, j: i64, v: i64) -> Arc<ExactMatrix> {
        self.get(IntersectionSpec::w(i as usize, j as usize, v as usize))
    }

    fn c(&mut self, i: i64, j: i64, l: i64, v: i64) -> Arc<ExactMatrix> {
        self.get(IntersectionSpec::c(i as usize, j as usize, l, v as usize))
    }

    fn h(&mut self, i: i64, j: i64, l: i64, v: i64) -> Arc<ExactMatrix> {
        self.get(IntersectionSpec::h(i as usize, j as usize, l, v as usize))
    }
}

fn linear_combination(
    rows: usize,
    cols: usize,
    terms: impl IntoIterator<Item = (i64, Arc<ExactMatrix>)>,
) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(rows, cols);
    for (coef, m) in terms {
        if coef != 0 {
            acc = acc
                .add_scaled(&Rational::from_int(coef), &m)
                .expect("terms share one shape");
        }
    }
    acc
}

fn compare(lhs: &ExactMatrix, rhs: &ExactMatrix) -> Verdict {
    match lhs.first_difference(rhs) {
        None => Verdict::Pass,
        Some((row, col, a, b)) => Verdict::Fail(Witness {
            row,
            col,
            lhs: a.to_string(),
            rhs: b.to_string(),
        }),
    }
}

/// Builds both sides of the identity independently and compares them.
pub fn verify_identity(id: Identity, p: &IdentityParams) -> Result<Verdict, IdentityError> {
    verify_identity_cached(id, p, &mut MatrixCache::default())
}

pub fn verify_identity_cached(
    id: Identity,
    p: &IdentityParams,
    cache: &mut MatrixCache,
) -> Result<Verdict, IdentityError> {
    if !id.in_range(p) {
        return Err(IdentityError::OutOfRange {
            identity: id,
            params: *p,
        });
    }
    let IdentityParams { v, i, j, k, l, s } = *p;
    let size = |t: i64| choose_i64(v, t) as usize;
    let mul = |a: &ExactMatrix, b: &ExactMatrix| a.mat_mul(b).expect("conformable by construction");
    let (lhs, rhs) = match id {
        Identity::InclusionProduct => {
            let lhs = mul(&cache.w(i, j, v), &cache.w(j, k, v));
            let rhs = linear_combination(
                size(i),
                size(k),
                [(choose_i64(k - i, j - i), cache.w(i, k, v))],
            );
            (lhs, rhs)
        }
        Identity::LevelDecomposition => {
            let lhs = (*cache.c(i, j, l, v)).clone();
            let terms: Vec<_> = (l.max(0)..=i.min(j))
                .map(|g| (choose_i64(g, l), cache.h(i, j, g, v)))
                .collect();
            (lhs, linear_combination(size(i), size(j), terms))
        }
        Identity::TransposeInclusionProduct => {
            let lhs = mul(&cache.w(i, j, v).transpose(), &cache.w(i, k, v));
            (lhs, (*cache.c(j, k, i, v)).clone())
        }
        Identity::IntersectionInclusionProduct => {
            let lhs = mul(&cache.c(i, j, l, v), &cache.w(j, k, v));
            let rhs = linear_combination(
                size(i),
                size(k),
                [(choose_i64(k - l, j - l), cache.c(i, k, l, v))],
            );
            (lhs, rhs)
        }
        Identity::InclusionOuterProduct => {
            let lhs = mul(&cache.w(i, k, v), &cache.w(j, k, v).transpose());
            let terms: Vec<_> = ((i + j - k).max(0)..=i.min(j))
                .map(|t| (choose_i64(v - i - j, k - i - j + t), cache.c(i, j, t, v)))
                .collect();
            (lhs, linear_combination(size(i), size(j), terms))
        }
        Identity::InclusionIntersectionProduct | Identity::InclusionIntersectionAltLimit => {
            let lhs = mul(&cache.w(i, j, v), &cache.c(j, k, l, v));
            let lo = if id == Identity::InclusionIntersectionProduct {
                (i + l - j).max(0)
            } else {
                (l + j - i).max(0)
            };
            let terms: Vec<_> = (lo..=l.min(i))
                .map(|h| {
                    let coef = choose_i64(v - l - i, j - l - i + h) * choose_i64(k - h, l - h);
                    (coef, cache.c(i, k, h, v))
                })
                .collect();
            (lhs, linear_combination(size(i), size(k), terms))
        }
        Identity::IntersectionProduct => {
            let lhs = mul(&cache.c(i, j, l, v), &cache.c(j, k, s, v));
            let terms: Vec<_> = ((l + s - j).max(0)..=l.min(s))
                .map(|h| {
                    let coef = choose_i64(v - l - s, j - l - s + h)
                        * choose_i64(i - h, l - h)
                        * choose_i64(k - h, s - h);
                    (coef, cache.c(i, k, h, v))
                })
                .collect();
            (lhs, linear_combination(size(i), size(k), terms))
        }
        Identity::AdjacentInclusion => {
            let lhs = mul(&cache.w(i, i + 1, v), &cache.w(j, i + 1, v).transpose());
            let rhs = linear_combination(
                size(i),
                size(j),
                [
                    (v - i - j, cache.c(i, j, j, v)),
                    (1, cache.c(i, j, j - 1, v)),
                ],
            );
            (lhs, rhs)
        }
        Identity::InclusionGram => {
            let lhs = mul(&cache.w(i, k, v), &cache.w(j, k, v).transpose());
            let terms: Vec<_> = (0..=(k - i).min(j))
                .map(|t| (choose_i64(v - i - j, k - i - t), cache.c(i, j, j - t, v)))
                .collect();
            (lhs, linear_combination(size(i), size(j), terms))
        }
    };
    Ok(compare(&lhs, &rhs))
}

/// One checked identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRecord {
    pub identity: Identity,
    pub params: IdentityParams,
    pub verdict: Verdict,
}

impl IdentityRecord {
    /// Failures of erratum probes are reported separately from defects.
    pub fn is_failure(&self) -> bool {
        !self.verdict.passed() && !self.identity.is_erratum_probe()
    }

    pub fn is_erratum(&self) -> bool {
        !self.verdict.passed() && self.identity.is_erratum_probe()
    }
}

/// Checks every identity on every in-range tuple with `v <= v_max`, in a
/// deterministic order (by `v`, then identity, then parameters).
pub fn sweep_identities(v_max: usize, identities: &[Identity]) -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for v in 0..=v_max {
        let mut cache = MatrixCache::default();
        for &id in identities {
            for p in id.tuples(v) {
                let verdict =
                    verify_identity_cached(id, &p, &mut cache).expect("tuples are in range");
                out.push(IdentityRecord {
                    identity: id,
                    params: p,
                    verdict,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Entrywise reference for `C^l_{i,j}(v)` straight from the definition.
    fn c_oracle(i: usize, j: usize, l: i64, v: usize) -> Vec<Vec<i64>> {
        let binom = |n: i64, k: i64| -> i64 {
            if k < 0 || k > n {
                return 0;
            }
            (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
        };
        let all = |k: usize| -> Vec<Vec<usize>> {
            (0u32..1 << v)
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| (0..v).filter(|b| m & (1 << b) != 0).collect())
                .collect()
        };
        // masks ascending = colex
        let rows = all(i);
        let cols = all(j);
        rows.iter()
            .map(|y| {
                cols.iter()
                    .map(|z| binom(y.iter().filter(|e| z.contains(e)).count() as i64, l))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn w_small_example() {
        assert_eq!(
            build_w(1, 2, 3).to_rows_i64(),
            vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
        assert_eq!(build_w(2, 2, 5), ExactMatrix::identity(10));
        assert_eq!(build_w(0, 3, 5), ExactMatrix::all_ones(1, 10));
    }

    #[test]
    fn c_and_h_special_levels() {
        for v in 0..=6 {
            for i in 0..=v {
                for j in 0..=v {
                    let ones = ExactMatrix::all_ones(
                        choose_i64(v as i64, i as i64) as usize,
                        choose_i64(v as i64, j as i64) as usize,
                    );
                    assert_eq!(build_c(i, j, 0, v), ones);
                    let top = i.min(j) as i64;
                    let expected = if i <= j {
                        build_w(i, j, v)
                    } else {
                        build_w(j, i, v).transpose()
                    };
                    assert_eq!(build_c(i, j, top, v), expected);
                    assert!(build_c(i, j, -1, v).is_zero());
                    assert!(build_c(i, j, top + 1, v).is_zero());
                }
            }
        }
    }

    #[test]
    fn c_matches_entrywise_oracle() {
        assert_eq!(build_c(2, 2, 1, 4).to_rows_i64(), c_oracle(2, 2, 1, 4));
        let c = build_c(2, 2, 1, 4);
        for r in 0..6 {
            assert_eq!(c.get(r, r), Rational::from_int(2));
        }
        for v in 0..=6 {
            for i in 0..=v {
                for j in 0..=v {
                    for l in 0..=3 {
                        assert_eq!(build_c(i, j, l, v).to_rows_i64(), c_oracle(i, j, l, v));
                    }
                }
            }
        }
    }

    #[test]
    fn level_counts() {
        assert_eq!(level_count(1, 1, 2), 2);
        assert_eq!(level_count(3, 3, 4), 2);
        assert_eq!(level_count(2, 3, 4), 2);
        assert_eq!(level_count(0, 0, 0), 1);
        // enumeration oracle
        for v in 0..=7 {
            for i in 0..=v {
                for j in 0..=v {
                    let rows = enumerate_subsets(v, i);
                    let cols = enumerate_subsets(v, j);
                    let mut seen = std::collections::BTreeSet::new();
                    for y in &rows {
                        for z in &cols {
                            seen.insert(intersect_size(y, z).unwrap());
                        }
                    }
                    assert_eq!(level_count(i, j, v), seen.len(), "({i},{j},{v})");
                }
            }
        }
    }

    #[test]
    fn level_range_marks_nonzero_h() {
        for v in 0..=7 {
            for i in 0..=v {
                for j in 0..=v {
                    let range = LevelRange::new(i, j, v);
                    for g in -1..=(v as i64 + 1) {
                        assert_eq!(!build_h(i, j, g, v).is_zero(), range.contains(g));
                    }
                }
            }
        }
    }

    #[test]
    fn worked_instances() {
        let p = IdentityParams {
            v: 4,
            i: 0,
            j: 1,
            k: 2,
            ..Default::default()
        };
        assert!(verify_identity(Identity::InclusionProduct, &p)
            .unwrap()
            .passed());
        let prod = build_w(0, 1, 4).mat_mul(&build_w(1, 2, 4)).unwrap();
        assert_eq!(prod, build_w(0, 2, 4).scale(&Rational::from_int(2)));

        let p = IdentityParams {
            v: 4,
            i: 1,
            j: 2,
            k: 2,
            ..Default::default()
        };
        assert!(verify_identity(Identity::TransposeInclusionProduct, &p)
            .unwrap()
            .passed());
        let gram = build_w(1, 2, 4)
            .transpose()
            .mat_mul(&build_w(1, 2, 4))
            .unwrap();
        assert_eq!(gram.to_rows_i64(), c_oracle(2, 2, 1, 4));
    }

    #[test]
    fn out_of_range_is_rejected_not_failed() {
        let p = IdentityParams {
            v: 4,
            i: 0,
            j: 3,
            ..Default::default()
        };
        assert!(matches!(
            verify_identity(Identity::AdjacentInclusion, &p),
            Err(IdentityError::OutOfRange { .. })
        ));
        let p = IdentityParams {
            v: 3,
            i: 2,
            j: 1,
            k: 1,
            ..Default::default()
        };
        assert!(verify_identity(Identity::InclusionProduct, &p).is_err());
    }

    #[test]
    fn alt_limit_variant_drops_terms() {
        // W_{0,1}(2) C^1_{1,1}(2) = [1, 1], but the alternative lower limit
        // max(0, l+j-i) = 2 exceeds min(l, i) = 0, leaving an empty sum.
        let p = IdentityParams {
            v: 2,
            i: 0,
            j: 1,
            k: 1,
            l: 1,
            s: 0,
        };
        assert!(verify_identity(Identity::InclusionIntersectionProduct, &p)
            .unwrap()
            .passed());
        match verify_identity(Identity::InclusionIntersectionAltLimit, &p).unwrap() {
            Verdict::Fail(w) => {
                assert_eq!((w.row, w.col), (0, 0));
                assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("1", "0"));
            }
            Verdict::Pass => panic!("alternative limit should fail here"),
        }
    }

    #[test]
    fn full_sweep_small_v() {
        let records = sweep_identities(5, &Identity::ALL);
        assert!(!records.is_empty());
        let failures: Vec<_> = records.iter().filter(|r| r.is_failure()).collect();
        assert!(failures.is_empty(), "{:?}", failures.first());
        for id in Identity::ALL {
            assert!(
                records.iter().any(|r| r.identity == id),
                "{id} never exercised"
            );
        }
    }

    #[test]
    fn transpose_symmetry() {
        for v in 0..=6 {
            for i in 0..=v {
                for j in 0..=v {
                    for l in 0..=3 {
                        assert_eq!(build_c(i, j, l, v).transpose(), build_c(j, i, l, v));
                        assert_eq!(build_h(i, j, l, v).transpose(), build_h(j, i, l, v));
                    }
                }
            }
        }
    }

    #[test]
    fn h_levels_partition_ones_and_are_independent() {
        use crate::linalg::MatrixSpace;
        for v in 0..=6 {
            for i in 0..=v {
                for j in 0..=v {
                    let range = LevelRange::new(i, j, v);
                    let hs: Vec<_> = range.iter().map(|g| build_h(i, j, g, v)).collect();
                    let (r, c) = (
                        choose_i64(v as i64, i as i64) as usize,
                        choose_i64(v as i64, j as i64) as usize,
                    );
                    let sum = hs
                        .iter()
                        .fold(ExactMatrix::zeros(r, c), |a, h| a.add(h).unwrap());
                    assert_eq!(sum, ExactMatrix::all_ones(r, c));
                    assert_eq!(
                        MatrixSpace::spanned_by(r, c, &hs).unwrap().dim(),
                        range.len()
                    );
                    let cs: Vec<_> = range.iter().map(|l| build_c(i, j, l, v)).collect();
                    assert_eq!(
                        MatrixSpace::spanned_by(r, c, &cs).unwrap().dim(),
                        range.len()
                    );
                }
            }
        }
    }
}
