//! The Terwilliger algebra `T(x)` of `J(n, m, m+1)`, computed by closure,
//! against the block algebra `M` spanned by `L(C^l(m) ⊗ C^s(n-m))`.
//!
//! For class `i` write `a_i = |z ∩ x|` and `o_i = |z \ x|` (for an m-subset
//! base, `a_i = m - floor(i/2)` and `o_i = ceil(i/2)`). Block `(i, j)` of `M`
//! is spanned by `C^l_{a_i,a_j}(m) ⊗ C^s_{o_i,o_j}(n-m)`, and the two explicit
//! bases use `H` or `C` matrices with `l` in `G_{i,j}` and `s` in `R_{i,j}`,
//! the feasible intersection sizes of the two factors.

use thiserror::Error;

use crate::graph::{
    build_dual_idempotents, johnson_terwilliger_generators, ClassShape, DistancePartition,
    GeometryError, GeometryParams, IncidenceGraph, Level, Mode,
};
use crate::intersection::{build_c, build_h, level_count, LevelRange};
use crate::linalg::{
    algebra_closure, embed_block, is_multiplicatively_closed, BlockLayout, ExactMatrix,
    LinalgError, MatrixSpace,
};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("the dimension formulas need n >= 3m, got n = {n}, m = {m}")]
    BelowTheorem { n: usize, m: usize },
}

/// `J(n, m, m+1)` with its generator set `A, E_0*, ..., E_D*`.
#[derive(Debug, Clone)]
pub struct AlgebraInstance {
    pub graph: IncidenceGraph,
    pub dual_idempotents: Vec<ExactMatrix>,
}

impl AlgebraInstance {
    pub fn new(params: GeometryParams, mode: Mode) -> Result<Self, AlgebraError> {
        Ok(Self::from_graph(IncidenceGraph::build(params, mode)?))
    }

    /// Uses the given graph as is; the adjacency need not be the true one.
    pub fn from_graph(graph: IncidenceGraph) -> Self {
        let dual_idempotents = build_dual_idempotents(&graph.partition);
        AlgebraInstance {
            graph,
            dual_idempotents,
        }
    }

    pub fn params(&self) -> GeometryParams {
        self.graph.params()
    }

    pub fn partition(&self) -> &DistancePartition {
        &self.graph.partition
    }

    pub fn size(&self) -> usize {
        self.graph.partition.vertices().len()
    }

    /// `true` when the structure theorem's hypotheses hold.
    pub fn meets_theorem(&self) -> bool {
        self.params().meets(Level::Theorem)
    }

    /// `A` followed by `E_0*, ..., E_D*`.
    pub fn generators(&self) -> Vec<ExactMatrix> {
        let mut gens = vec![self.graph.adjacency.clone()];
        gens.extend(self.dual_idempotents.iter().cloned());
        gens
    }

    /// `T(x)` as the algebra generated by `A` and the `E_i*`.
    pub fn compute_t(&self) -> Result<MatrixSpace, AlgebraError> {
        Ok(algebra_closure(&self.generators())?)
    }

    fn factor_sizes(&self) -> (usize, usize) {
        let p = self.params();
        (p.base_size(), p.n - p.base_size())
    }

    fn class(&self, i: usize) -> ClassShape {
        self.partition().classes()[i]
    }

    fn lift(&self, block: &ExactMatrix, i: usize, j: usize) -> ExactMatrix {
        embed_block(block, i, j, self.partition()).expect("block sized by its classes")
    }

    /// `M`, spanned by every `L(C^l ⊗ C^s)` over the full ranges
    /// `0 <= l <= min(a_i, a_j)`, `0 <= s <= min(o_i, o_j)`.
    pub fn compute_m(&self) -> MatrixSpace {
        let (inner_v, outer_v) = self.factor_sizes();
        let count = self.partition().block_count();
        let mut space = MatrixSpace::new(self.size(), self.size());
        for i in 0..count {
            for j in 0..count {
                let (ci, cj) = (self.class(i), self.class(j));
                for l in 0..=ci.inner.min(cj.inner) {
                    let left = build_c(ci.inner, cj.inner, l as i64, inner_v);
                    for s in 0..=ci.outer.min(cj.outer) {
                        let right = build_c(ci.outer, cj.outer, s as i64, outer_v);
                        let full = self.lift(&left.kron(&right), i, j);
                        space.insert_vector(&full.vectorize());
                    }
                }
            }
        }
        space
    }

    /// `G_{i,j}` and `R_{i,j}`.
    pub fn level_ranges(&self, i: usize, j: usize) -> (LevelRange, LevelRange) {
        let (inner_v, outer_v) = self.factor_sizes();
        let (ci, cj) = (self.class(i), self.class(j));
        (
            LevelRange::new(ci.inner, cj.inner, inner_v),
            LevelRange::new(ci.outer, cj.outer, outer_v),
        )
    }

    /// `sum_{i,j} |G_{i,j}| |R_{i,j}|` over this instance's classes.
    pub fn sum_gr(&self) -> usize {
        let count = self.partition().block_count();
        (0..count)
            .flat_map(|i| (0..count).map(move |j| (i, j)))
            .map(|(i, j)| {
                let (g, r) = self.level_ranges(i, j);
                g.len() * r.len()
            })
            .sum()
    }

    pub fn basis_family(&self, kind: BasisKind) -> BasisFamily {
        let (inner_v, outer_v) = self.factor_sizes();
        let count = self.partition().block_count();
        let build = match kind {
            BasisKind::H => build_h,
            BasisKind::C => build_c,
        };
        let mut members = Vec::new();
        for i in 0..count {
            for j in 0..count {
                let (ci, cj) = (self.class(i), self.class(j));
                let (g_range, r_range) = self.level_ranges(i, j);
                for g in g_range.iter() {
                    let left = build(ci.inner, cj.inner, g, inner_v);
                    for r in r_range.iter() {
                        let right = build(ci.outer, cj.outer, r, outer_v);
                        members.push(BasisMember {
                            i,
                            j,
                            inner_level: g,
                            outer_level: r,
                            matrix: self.lift(&left.kron(&right), i, j),
                        });
                    }
                }
            }
        }
        BasisFamily { kind, members }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    H,
    C,
}

#[derive(Debug, Clone)]
pub struct BasisMember {
    pub i: usize,
    pub j: usize,
    /// Level of the factor over `x` (`g` or `l`).
    pub inner_level: i64,
    /// Level of the factor over the complement (`r` or `s`).
    pub outer_level: i64,
    pub matrix: ExactMatrix,
}

#[derive(Debug, Clone)]
pub struct BasisFamily {
    pub kind: BasisKind,
    pub members: Vec<BasisMember>,
}

impl BasisFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn span(&self, size: usize) -> MatrixSpace {
        MatrixSpace::spanned_by(size, size, self.members.iter().map(|b| &b.matrix))
            .expect("members are full-size")
    }
}

/// Outcome of checking one basis family against `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCheck {
    pub cardinality: usize,
    pub span_dim: usize,
    pub t_dim: usize,
    pub spans_t: bool,
}

impl BasisCheck {
    pub fn passed(&self) -> bool {
        self.cardinality == self.t_dim && self.span_dim == self.cardinality && self.spans_t
    }
}

pub fn verify_basis(family: &BasisFamily, t: &MatrixSpace) -> BasisCheck {
    let span = family.span(t.ambient().0);
    BasisCheck {
        cardinality: family.len(),
        span_dim: span.dim(),
        t_dim: t.dim(),
        spans_t: span.equals(t),
    }
}

/// Coordinates of every C-member in the H-family, checked to be
/// unitriangular: the coefficient of `H^g ⊗ H^r` in `C^l ⊗ C^s` (same block)
/// is zero unless `g >= l` and `r >= s`, and one when both are equal.
///
/// The H-members of a block have disjoint 0/1 supports, so a coordinate is
/// read off at any cell of the member's support; the expansion is then
/// confirmed by rebuilding the C-member from it.
pub fn c_to_h_unitriangular(h: &BasisFamily, c: &BasisFamily) -> bool {
    for cm in &c.members {
        let mut rebuilt = ExactMatrix::zeros(cm.matrix.rows(), cm.matrix.cols());
        for hm in h.members.iter().filter(|hm| (hm.i, hm.j) == (cm.i, cm.j)) {
            let (r, col, _) = hm.matrix.iter().next().expect("H-members are nonzero");
            let coef = cm.matrix.get(r, col);
            let above = hm.inner_level >= cm.inner_level && hm.outer_level >= cm.outer_level;
            let diagonal = hm.inner_level == cm.inner_level && hm.outer_level == cm.outer_level;
            if (!above && !coef.is_zero()) || (diagonal && !coef.is_one()) {
                return false;
            }
            rebuilt = rebuilt.add_scaled(&coef, &hm.matrix).expect("same shape");
        }
        if rebuilt != cm.matrix {
            return false;
        }
    }
    true
}

/// First `(basis index, class)` where `E_i* B E_i*` is not symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinCheck {
    pub checked: usize,
    pub asymmetric: Option<(usize, usize)>,
}

impl ThinCheck {
    pub fn passed(&self) -> bool {
        self.asymmetric.is_none()
    }
}

/// Symmetry of every `E_i* B E_i*` for `B` in the basis of `T`.
pub fn verify_thin(inst: &AlgebraInstance, t: &MatrixSpace) -> Result<ThinCheck, AlgebraError> {
    let mut checked = 0;
    for (bi, b) in t.basis_matrices().enumerate() {
        for (i, e) in inst.dual_idempotents.iter().enumerate() {
            let sandwich = e.mat_mul(&b)?.mat_mul(e)?;
            checked += 1;
            if !sandwich.is_symmetric() {
                return Ok(ThinCheck {
                    checked,
                    asymmetric: Some((bi, i)),
                });
            }
        }
    }
    Ok(ThinCheck {
        checked,
        asymmetric: None,
    })
}

/// Dimension comparison between the even corner
/// `sum_{i,j} E_{2i}* T E_{2j}*` and the Terwilliger algebra of `J(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerCheck {
    pub corner_dim: usize,
    pub johnson_dim: usize,
    pub sum_gr_corner: usize,
}

impl CornerCheck {
    pub fn passed(&self) -> bool {
        self.corner_dim == self.johnson_dim && self.corner_dim == self.sum_gr_corner
    }
}

pub fn even_corner(inst: &AlgebraInstance, t: &MatrixSpace) -> Result<MatrixSpace, AlgebraError> {
    let evens: Vec<&ExactMatrix> = inst.dual_idempotents.iter().step_by(2).collect();
    let mut corner = MatrixSpace::new(inst.size(), inst.size());
    for b in t.basis_matrices() {
        for ei in &evens {
            let left = ei.mat_mul(&b)?;
            if left.is_zero() {
                continue;
            }
            for ej in &evens {
                corner.insert(&left.mat_mul(ej)?)?;
            }
        }
    }
    Ok(corner)
}

/// Terwilliger algebra of the Johnson graph `J(n, m)` by closure.
pub fn johnson_terwilliger(n: usize, m: usize) -> Result<MatrixSpace, AlgebraError> {
    Ok(algebra_closure(&johnson_terwilliger_generators(n, m))?)
}

pub fn verify_corner(inst: &AlgebraInstance, t: &MatrixSpace) -> Result<CornerCheck, AlgebraError> {
    let p = inst.params();
    let corner = even_corner(inst, t)?;
    let johnson = johnson_terwilliger(p.n, p.m)?;
    let count = inst.partition().block_count();
    let sum_gr_corner = (0..count)
        .step_by(2)
        .flat_map(|i| (0..count).step_by(2).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (g, r) = inst.level_ranges(i, j);
            g.len() * r.len()
        })
        .sum();
    Ok(CornerCheck {
        corner_dim: corner.dim(),
        johnson_dim: johnson.dim(),
        sum_gr_corner,
    })
}

/// Outcome of comparing `T` with `M`.
#[derive(Debug, Clone)]
pub struct TmCheck {
    pub t_dim: usize,
    pub m_dim: usize,
    pub t_in_m: bool,
    pub equal: bool,
    /// A basis element of one space missing from the other.
    pub witness: Option<ExactMatrix>,
}

pub fn verify_t_equals_m(t: &MatrixSpace, m: &MatrixSpace) -> TmCheck {
    let equal = t.equals(m);
    let missing_from_m = m.first_missing(t);
    let t_in_m = missing_from_m.is_none();
    let witness = if equal {
        None
    } else {
        missing_from_m.or_else(|| t.first_missing(m))
    };
    TmCheck {
        t_dim: t.dim(),
        m_dim: m.dim(),
        t_in_m,
        equal,
        witness,
    }
}

/// Generators lie in `T`, `T` is closed under multiplication.
pub fn t_is_generated_algebra(
    inst: &AlgebraInstance,
    t: &MatrixSpace,
) -> Result<bool, AlgebraError> {
    for g in inst.generators() {
        if !t.contains(&g)? {
            return Ok(false);
        }
    }
    Ok(is_multiplicatively_closed(t)?)
}

/// `E_i* E_j* = δ_ij E_i*`, `sum E_i* = I` and `E_i* A E_j* = 0` for
/// `|i - j| != 1`.
pub fn verify_idempotent_calculus(inst: &AlgebraInstance) -> Result<bool, AlgebraError> {
    let size = inst.size();
    let es = &inst.dual_idempotents;
    let mut total = ExactMatrix::zeros(size, size);
    for (i, ei) in es.iter().enumerate() {
        total = total.add(ei)?;
        let left = ei.mat_mul(&inst.graph.adjacency)?;
        for (j, ej) in es.iter().enumerate() {
            let product = ei.mat_mul(ej)?;
            let expected = if i == j {
                ei.clone()
            } else {
                ExactMatrix::zeros(size, size)
            };
            if product != expected {
                return Ok(false);
            }
            if i.abs_diff(j) != 1 && !left.mat_mul(ej)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(total == ExactMatrix::identity(size))
}

/// The closed-form dimension claimed for `n >= 3m`:
/// `(m+1)(m+2)(m+3)(3m+10)/12`, minus 4 when `n = 3m` and minus 1 when
/// `n = 3m + 1`.
pub fn dim_closed_form(n: usize, m: usize) -> Result<u64, AlgebraError> {
    if n < 3 * m {
        return Err(AlgebraError::BelowTheorem { n, m });
    }
    let m64 = m as u64;
    let base = (m64 + 1) * (m64 + 2) * (m64 + 3) * (3 * m64 + 10) / 12;
    let correction = if n == 3 * m {
        4
    } else if n == 3 * m + 1 {
        1
    } else {
        0
    };
    Ok(base - correction)
}

/// `sum_{i,j=0}^{2m+1} |G_{i,j}| |R_{i,j}|` with
/// `|G_{i,j}| = level_count(m - floor(i/2), m - floor(j/2); m)` and
/// `|R_{i,j}| = level_count(ceil(i/2), ceil(j/2); n - m)`.
pub fn dim_sum_gr(n: usize, m: usize) -> Result<u64, AlgebraError> {
    if n < 3 * m {
        return Err(AlgebraError::BelowTheorem { n, m });
    }
    let mut total = 0u64;
    for i in 0..=2 * m + 1 {
        for j in 0..=2 * m + 1 {
            let g = level_count(m - i / 2, m - j / 2, m);
            let r = level_count(i.div_ceil(2), j.div_ceil(2), n - m);
            total += (g * r) as u64;
        }
    }
    Ok(total)
}

/// Closure of the dual idempotents alone.
pub fn diagonal_algebra(inst: &AlgebraInstance) -> Result<MatrixSpace, AlgebraError> {
    Ok(algebra_closure(&inst.dual_idempotents)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(n: usize, m: usize) -> AlgebraInstance {
        AlgebraInstance::new(GeometryParams::new(n, m), Mode::Strict).unwrap()
    }

    /// Brute-force `sum |G||R|`: collect observed intersection sizes.
    fn sum_gr_by_enumeration(n: usize, m: usize) -> usize {
        use crate::subsets::{enumerate_subsets, intersect_size};
        use std::collections::BTreeSet;
        let sizes = |a: usize, b: usize, v: usize| {
            let mut seen = BTreeSet::new();
            for y in enumerate_subsets(v, a) {
                for z in enumerate_subsets(v, b) {
                    seen.insert(intersect_size(&y, &z).unwrap());
                }
            }
            seen.len()
        };
        let mut total = 0;
        for i in 0..=2 * m + 1 {
            for j in 0..=2 * m + 1 {
                total +=
                    sizes(m - i / 2, m - j / 2, m) * sizes(i.div_ceil(2), j.div_ceil(2), n - m);
            }
        }
        total
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(dim_closed_form(5, 1).unwrap(), 26);
        assert_eq!(dim_closed_form(3, 1).unwrap(), 22);
        assert_eq!(dim_closed_form(4, 1).unwrap(), 25);
        assert_eq!(dim_closed_form(7, 2).unwrap(), 79);
        assert_eq!(dim_closed_form(8, 2).unwrap(), 80);
        assert!(dim_closed_form(5, 2).is_err());
    }

    #[test]
    fn sum_gr_matches_enumeration() {
        for m in 0..=3 {
            for n in 3 * m.max(1)..=3 * m + 4 {
                assert_eq!(
                    dim_sum_gr(n, m).unwrap() as usize,
                    sum_gr_by_enumeration(n, m),
                    "n={n} m={m}"
                );
            }
        }
        assert_eq!(dim_sum_gr(3, 1).unwrap(), 20);
        assert_eq!(dim_sum_gr(5, 1).unwrap(), 26);
        assert_eq!(dim_sum_gr(4, 1).unwrap(), 25);
        assert_eq!(dim_sum_gr(7, 2).unwrap(), 79);
        assert_eq!(dim_sum_gr(8, 2).unwrap(), 80);
        assert!(dim_sum_gr(5, 2).is_err());
    }

    #[test]
    fn sum_forms_agree_above_3m() {
        for m in 0..=5 {
            for n in 3 * m + 1..=3 * m + 6 {
                if n == 0 {
                    continue;
                }
                assert_eq!(
                    dim_sum_gr(n, m).unwrap(),
                    dim_closed_form(n, m).unwrap(),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn instance_sum_gr_matches_formula() {
        for (n, m) in [(3, 1), (5, 1), (6, 2), (8, 2)] {
            assert_eq!(instance(n, m).sum_gr() as u64, dim_sum_gr(n, m).unwrap());
        }
    }

    #[test]
    fn t_for_k_one_five() {
        let inst = instance(5, 1);
        let t = inst.compute_t().unwrap();
        assert_eq!(t.dim(), 26);
        assert!(t.contains(&ExactMatrix::identity(inst.size())).unwrap());
        assert!(t_is_generated_algebra(&inst, &t).unwrap());
        let m = inst.compute_m();
        assert_eq!(m.dim(), 26);
        assert!(is_multiplicatively_closed(&m).unwrap());
        let tm = verify_t_equals_m(&t, &m);
        assert!(tm.equal && tm.t_in_m && tm.witness.is_none());
    }

    #[test]
    fn m00_is_one_dimensional() {
        let inst = instance(7, 2);
        let count = inst.partition().block_count();
        let m = inst.compute_m();
        let corner: Vec<ExactMatrix> = m
            .basis_matrices()
            .filter(|b| b.supported_in_block(0, 0, inst.partition()))
            .collect();
        assert_eq!(corner.len(), 1);
        assert_eq!(count, 6);
    }

    #[test]
    fn bases_for_small_instance() {
        let inst = instance(5, 1);
        let t = inst.compute_t().unwrap();
        let h = inst.basis_family(BasisKind::H);
        let c = inst.basis_family(BasisKind::C);
        assert_eq!(h.len(), 26);
        assert!(verify_basis(&h, &t).passed());
        assert!(verify_basis(&c, &t).passed());
        assert!(c_to_h_unitriangular(&h, &c));
        // H-members: pairwise disjoint supports
        for (a, x) in h.members.iter().enumerate() {
            for y in &h.members[a + 1..] {
                assert!(x
                    .matrix
                    .iter()
                    .all(|(r, c, _)| y.matrix.get(r, c).is_zero()));
            }
        }
    }

    #[test]
    fn thin_and_corner_small() {
        let inst = instance(5, 1);
        let t = inst.compute_t().unwrap();
        assert!(verify_thin(&inst, &t).unwrap().passed());
        let corner = verify_corner(&inst, &t).unwrap();
        assert_eq!(
            corner,
            CornerCheck {
                corner_dim: 5,
                johnson_dim: 5,
                sum_gr_corner: 5
            }
        );
    }

    #[test]
    fn idempotent_calculus_holds() {
        for (n, m) in [(3, 1), (5, 1), (6, 2)] {
            assert!(verify_idempotent_calculus(&instance(n, m)).unwrap());
        }
    }

    #[test]
    fn diagonal_generators_alone() {
        let inst = instance(6, 2);
        let d = diagonal_algebra(&inst).unwrap();
        assert_eq!(d.dim(), 2 * 2 + 2);
        let t = inst.compute_t().unwrap();
        assert!(t.contains_space(&d));
        assert!(t.dim() > d.dim());
    }

    #[test]
    fn broken_adjacency_is_detected() {
        let inst = instance(5, 1);
        let mut graph = inst.graph.clone();
        // drop one edge (both directions)
        let (u, w) = graph.edges()[0];
        let size = graph.adjacency.rows();
        let kept = graph
            .adjacency
            .iter()
            .filter(|&(r, c, _)| (r, c) != (u, w) && (r, c) != (w, u))
            .map(|(r, c, v)| (r, c, v.clone()))
            .collect::<Vec<_>>();
        graph.adjacency = ExactMatrix::from_triplets(size, size, kept);
        let broken = AlgebraInstance::from_graph(graph);
        let t = broken.compute_t().unwrap();
        let m = broken.compute_m();
        assert!(!verify_t_equals_m(&t, &m).equal);
    }
}
