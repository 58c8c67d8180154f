//! k-subsets of a ground set `{1, ..., v}` as bitmasks.
//!
//! Element `e` occupies bit `e - 1`. Colexicographic order on k-subsets is then
//! exactly the numeric order of the masks, and the colex rank of
//! `{p_1 < ... < p_k}` (0-based positions) is `sum_t C(p_t, t)` with `t` counted
//! from 1.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("ground set size {0} exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("element {element} is outside the ground set 1..={v}")]
    ElementOutOfRange { element: usize, v: usize },
    #[error("mask {mask:#x} uses positions beyond the ground set of size {v}")]
    MaskOutOfRange { mask: u64, v: usize },
    #[error("subsets over different ground sets (v = {left} and v = {right})")]
    GroundMismatch { left: usize, right: usize },
    #[error("rank {rank} out of range for {k}-subsets of a {v}-set")]
    RankOutOfRange { rank: u64, v: usize, k: usize },
    #[error("subset {subset} is not contained in the relabeling domain {domain}")]
    NotInDomain { subset: String, domain: String },
}

/// `C(n, k)` for arbitrary integers, zero whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// `C(n, k)` as a machine integer; panics if the value does not fit in `u64`.
pub fn choose(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k as u128 {
        acc = acc * (n as u128 - t) / (t + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `C(n, k)` as an `i64` with the out-of-range-is-zero convention.
pub fn choose_i64(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    i64::try_from(choose(n as usize, k as usize)).expect("binomial coefficient overflows i64")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetCode {
    v: u8,
    mask: u64,
}

impl SubsetCode {
    pub fn from_mask(v: usize, mask: u64) -> Result<Self, SubsetError> {
        if v > MAX_GROUND {
            return Err(SubsetError::GroundTooLarge(v));
        }
        if mask >> v != 0 {
            return Err(SubsetError::MaskOutOfRange { mask, v });
        }
        Ok(SubsetCode { v: v as u8, mask })
    }

    /// Builds a subset from 1-based elements; duplicates are merged.
    pub fn from_elements(v: usize, elements: &[usize]) -> Result<Self, SubsetError> {
        if v > MAX_GROUND {
            return Err(SubsetError::GroundTooLarge(v));
        }
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > v {
                return Err(SubsetError::ElementOutOfRange { element: e, v });
            }
            mask |= 1 << (e - 1);
        }
        Ok(SubsetCode { v: v as u8, mask })
    }

    pub fn empty(v: usize) -> Result<Self, SubsetError> {
        Self::from_mask(v, 0)
    }

    pub fn full(v: usize) -> Result<Self, SubsetError> {
        if v > MAX_GROUND {
            return Err(SubsetError::GroundTooLarge(v));
        }
        Self::from_mask(v, low_bits(v))
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn ground(&self) -> usize {
        self.v as usize
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ground() && self.mask & (1 << (element - 1)) != 0
    }

    pub fn is_subset_of(&self, other: &SubsetCode) -> bool {
        self.mask & !other.mask == 0
    }

    /// 1-based elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        BitIter(self.mask).map(|p| p + 1).collect()
    }

    pub fn complement(&self) -> SubsetCode {
        SubsetCode {
            v: self.v,
            mask: !self.mask & low_bits(self.ground()),
        }
    }

    /// Colex rank among subsets of the same size.
    pub fn rank(&self) -> u64 {
        BitIter(self.mask)
            .enumerate()
            .map(|(t, p)| choose(p, t + 1))
            .sum()
    }

    pub fn unrank(v: usize, k: usize, rank: u64) -> Result<Self, SubsetError> {
        if v > MAX_GROUND {
            return Err(SubsetError::GroundTooLarge(v));
        }
        if k > v || rank >= choose(v, k) {
            return Err(SubsetError::RankOutOfRange { rank, v, k });
        }
        let mut mask = 0u64;
        let mut rest = rank;
        let mut top = v;
        for t in (1..=k).rev() {
            // largest position p < top with C(p, t) <= rest
            let mut p = top - 1;
            while choose(p, t) > rest {
                p -= 1;
            }
            mask |= 1 << p;
            rest -= choose(p, t);
            top = p;
        }
        Ok(SubsetCode { v: v as u8, mask })
    }

    pub fn intersection(&self, other: &SubsetCode) -> Result<SubsetCode, SubsetError> {
        self.same_ground(other)?;
        Ok(SubsetCode {
            v: self.v,
            mask: self.mask & other.mask,
        })
    }

    pub fn union(&self, other: &SubsetCode) -> Result<SubsetCode, SubsetError> {
        self.same_ground(other)?;
        Ok(SubsetCode {
            v: self.v,
            mask: self.mask | other.mask,
        })
    }

    fn same_ground(&self, other: &SubsetCode) -> Result<(), SubsetError> {
        if self.v != other.v {
            return Err(SubsetError::GroundMismatch {
                left: self.ground(),
                right: other.ground(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SubsetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.elements().into_iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.v)
    }
}

/// `|a ∩ b|`.
pub fn intersect_size(a: &SubsetCode, b: &SubsetCode) -> Result<usize, SubsetError> {
    a.same_ground(b)?;
    Ok((a.mask & b.mask).count_ones() as usize)
}

/// All k-subsets of `{1..v}` in colex order; empty when `k > v`.
pub fn enumerate_subsets(v: usize, k: usize) -> Vec<SubsetCode> {
    assert!(v <= MAX_GROUND, "ground set too large: {v}");
    if k > v {
        return Vec::new();
    }
    let count = choose(v, k) as usize;
    let mut out = Vec::with_capacity(count);
    if k == 0 {
        out.push(SubsetCode {
            v: v as u8,
            mask: 0,
        });
        return out;
    }
    // Gosper's hack walks same-popcount masks in increasing numeric order.
    let mut mask: u64 = low_bits(k);
    for _ in 0..count {
        out.push(SubsetCode { v: v as u8, mask });
        let c = mask & mask.wrapping_neg();
        let r = mask.wrapping_add(c);
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

/// Order-preserving identification of a subset `D` of `{1..v}` with `{1..|D|}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relabeling {
    domain: SubsetCode,
}

impl Relabeling {
    pub fn new(domain: SubsetCode) -> Self {
        Relabeling { domain }
    }

    pub fn domain(&self) -> SubsetCode {
        self.domain
    }

    /// Size of the relabeled ground set.
    pub fn target_size(&self) -> usize {
        self.domain.len()
    }

    /// Maps a subset of the domain into `{1..|D|}`.
    pub fn compress(&self, s: &SubsetCode) -> Result<SubsetCode, SubsetError> {
        self.domain.same_ground(s)?;
        if !s.is_subset_of(&self.domain) {
            return Err(SubsetError::NotInDomain {
                subset: s.to_string(),
                domain: self.domain.to_string(),
            });
        }
        let mut out = 0u64;
        for (idx, p) in BitIter(self.domain.mask).enumerate() {
            if s.mask & (1 << p) != 0 {
                out |= 1 << idx;
            }
        }
        SubsetCode::from_mask(self.target_size(), out)
    }

    /// Inverse of [`Relabeling::compress`].
    pub fn expand(&self, s: &SubsetCode) -> Result<SubsetCode, SubsetError> {
        if s.ground() != self.target_size() {
            return Err(SubsetError::GroundMismatch {
                left: self.target_size(),
                right: s.ground(),
            });
        }
        let mut out = 0u64;
        for (idx, p) in BitIter(self.domain.mask).enumerate() {
            if s.mask & (1 << idx) != 0 {
                out |= 1 << p;
            }
        }
        SubsetCode::from_mask(self.domain.ground(), out)
    }
}

fn low_bits(v: usize) -> u64 {
    if v >= 64 {
        u64::MAX
    } else {
        (1u64 << v) - 1
    }
}

/// 0-based positions of set bits, lowest first.
struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: usize, e: &[usize]) -> SubsetCode {
        SubsetCode::from_elements(v, e).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(2, 1), BigInt::from(2));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(-2, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
    }

    #[test]
    fn enumerate_small_cases() {
        let got: Vec<Vec<usize>> = enumerate_subsets(3, 2)
            .iter()
            .map(|s| s.elements())
            .collect();
        assert_eq!(got, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let empty = enumerate_subsets(3, 0);
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
        let singles: Vec<Vec<usize>> = enumerate_subsets(5, 1)
            .iter()
            .map(|s| s.elements())
            .collect();
        assert_eq!(singles, (1..=5).map(|e| vec![e]).collect::<Vec<_>>());
        assert!(enumerate_subsets(2, 3).is_empty());
        assert_eq!(enumerate_subsets(6, 6).len(), 1);
    }

    #[test]
    fn intersections() {
        assert_eq!(
            intersect_size(&set(4, &[1, 2]), &set(4, &[2, 3])).unwrap(),
            1
        );
        let y = set(6, &[1, 4, 6]);
        assert_eq!(intersect_size(&y, &y).unwrap(), 3);
        assert_eq!(
            intersect_size(&set(4, &[1, 2]), &set(4, &[3, 4])).unwrap(),
            0
        );
        assert!(matches!(
            intersect_size(&set(4, &[1]), &set(5, &[1])),
            Err(SubsetError::GroundMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SubsetCode::from_elements(3, &[4]).is_err());
        assert!(SubsetCode::from_elements(3, &[0]).is_err());
        assert!(SubsetCode::from_mask(3, 0b1000).is_err());
        assert!(SubsetCode::unrank(4, 2, 6).is_err());
    }

    #[test]
    fn relabeling_round_trip() {
        let x = set(7, &[2, 5]);
        let rest = Relabeling::new(x.complement());
        assert_eq!(rest.target_size(), 5);
        let s = set(7, &[3, 6, 7]);
        let c = rest.compress(&s).unwrap();
        assert_eq!(c.elements(), vec![2, 4, 5]);
        assert_eq!(rest.expand(&c).unwrap(), s);
        assert!(rest.compress(&set(7, &[2])).is_err());
    }

    #[test]
    fn rank_bijection_exhaustive() {
        for v in 0..=16 {
            for k in 0..=v {
                let all = enumerate_subsets(v, k);
                assert_eq!(all.len() as u64, choose(v, k));
                for (idx, s) in all.iter().enumerate() {
                    assert_eq!(s.len(), k);
                    assert_eq!(s.rank(), idx as u64);
                    assert_eq!(SubsetCode::unrank(v, k, idx as u64).unwrap(), *s);
                }
                assert!(all.windows(2).all(|w| w[0].mask() < w[1].mask()));
            }
        }
    }

    proptest! {
        #[test]
        fn rank_unrank_inverse(v in 0usize..40, k_frac in 0.0f64..1.0, r_frac in 0.0f64..1.0) {
            let k = ((v as f64) * k_frac).round() as usize;
            let total = choose(v, k);
            let r = ((total - 1) as f64 * r_frac) as u64;
            let s = SubsetCode::unrank(v, k, r).unwrap();
            prop_assert_eq!(s.len(), k);
            prop_assert_eq!(s.rank(), r);
        }

        #[test]
        fn colex_matches_reversed_lex(v in 1usize..12, k_frac in 0.0f64..1.0) {
            let k = ((v as f64) * k_frac).round() as usize;
            let all = enumerate_subsets(v, k);
            for w in all.windows(2) {
                let mut a = w[0].elements();
                let mut b = w[1].elements();
                a.reverse();
                b.reverse();
                prop_assert!(a < b);
            }
        }
    }
}
