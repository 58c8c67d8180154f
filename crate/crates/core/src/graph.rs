//! The incidence graph `J(n, m, m+1)` of the Johnson geometry and its
//! distance partition around a base vertex.
//!
//! Vertices are the m- and (m+1)-subsets of `{1..n}`; an m-subset is adjacent
//! to every (m+1)-subset containing it. For a base vertex `x` the distance to
//! `z` is `|x Δ z|`, so each class `Γ_d(x)` is fixed by the vertex size and
//! `|x ∩ z|`. Inside a class a vertex is the pair `(z ∩ x, z \ x)`; both parts
//! are relabeled onto `{1..|x|}` and `{1..n-|x|}` and the class is ordered by
//! the first part in colex order, then the second. Under this ordering the
//! blocks of the adjacency matrix are Kronecker products of inclusion
//! matrices with colex-ordered factors.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::ops::Range;

use serde::Serialize;
use thiserror::Error;

use crate::intersection::{build_h, build_w};
use crate::linalg::{BlockLayout, ExactMatrix, IndexSpace};
use crate::scalar::Rational;
use crate::subsets::{
    choose, enumerate_subsets, intersect_size, Relabeling, SubsetCode, SubsetError, MAX_GROUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("J({n},{m},{m1}) needs n >= {need} for {what}", m1 = m + 1)]
    TooSmall {
        n: usize,
        m: usize,
        need: usize,
        what: &'static str,
    },
    #[error("a base vertex of size m+1 is only available in exploratory mode")]
    UpperBaseNotExploratory,
    #[error("vertex {z} has size {size}, expected {m} or {m1}", m1 = m + 1)]
    VertexSize { z: String, size: usize, m: usize },
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

/// Which side of the bipartition the base vertex comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseSide {
    /// An m-subset.
    #[default]
    Lower,
    /// An (m+1)-subset; exploratory only.
    Upper,
}

/// Validation thresholds, from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// The graph exists: `n >= m + 1`.
    Construct,
    /// The base vertex has eccentricity `2m + 1`: `n >= 2m + 1`.
    Diameter,
    /// Hypothesis of the structure theorem: `n >= 3m`.
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeometryParams {
    pub n: usize,
    pub m: usize,
    pub base: BaseSide,
}

impl GeometryParams {
    pub fn new(n: usize, m: usize) -> Self {
        GeometryParams {
            n,
            m,
            base: BaseSide::Lower,
        }
    }

    pub fn with_base(mut self, base: BaseSide) -> Self {
        self.base = base;
        self
    }

    pub fn base_size(&self) -> usize {
        match self.base {
            BaseSide::Lower => self.m,
            BaseSide::Upper => self.m + 1,
        }
    }

    /// `|X| = C(n, m) + C(n, m+1)`.
    pub fn vertex_count(&self) -> usize {
        (choose(self.n, self.m) + choose(self.n, self.m + 1)) as usize
    }

    pub fn validate(&self, level: Level) -> Result<(), GeometryError> {
        let (n, m) = (self.n, self.m);
        if n > MAX_GROUND {
            return Err(SubsetError::GroundTooLarge(n).into());
        }
        let checks = [
            (Level::Construct, m + 1, "the graph to exist"),
            (Level::Diameter, 2 * m + 1, "D(x) = 2m+1"),
            (Level::Theorem, 3 * m, "the structure theorem"),
        ];
        for (lvl, need, what) in checks {
            if lvl <= level && n < need {
                return Err(GeometryError::TooSmall { n, m, need, what });
            }
        }
        Ok(())
    }

    pub fn meets(&self, level: Level) -> bool {
        self.validate(level).is_ok() && self.base == BaseSide::Lower
    }
}

/// Distance of `z` from an m-subset `x`: `2(m - |x ∩ z|)` for an m-subset,
/// `2(m - |x ∩ z|) + 1` for an (m+1)-subset.
pub fn classify_vertex(x: &SubsetCode, z: &SubsetCode) -> Result<usize, GeometryError> {
    let m = x.len();
    let common = intersect_size(x, z)?;
    match z.len() {
        s if s == m => Ok(2 * (m - common)),
        s if s == m + 1 => Ok(2 * (m - common) + 1),
        size => Err(GeometryError::VertexSize {
            z: z.to_string(),
            size,
            m,
        }),
    }
}

/// Shape of one distance class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassShape {
    pub distance: usize,
    /// Size of the vertices in this class (m or m+1).
    pub vertex_size: usize,
    /// `|z ∩ x|`.
    pub inner: usize,
    /// `|z \ x|`.
    pub outer: usize,
    pub start: usize,
    pub len: usize,
}

/// Classes `Γ_0(x), ..., Γ_D(x)` in vertex order.
#[derive(Debug, Clone)]
pub struct DistancePartition {
    params: GeometryParams,
    base: SubsetCode,
    classes: Vec<ClassShape>,
    vertices: Vec<SubsetCode>,
    index: HashMap<u64, usize>,
}

impl DistancePartition {
    /// Partition around `x = {1..b}` where `b` is the base size.
    pub fn new(params: GeometryParams) -> Result<Self, GeometryError> {
        params.validate(Level::Construct)?;
        let (n, m, b) = (params.n, params.m, params.base_size());
        let base = SubsetCode::from_mask(n, (1u64 << b) - 1)?;
        let inner_map = Relabeling::new(base);
        let outer_map = Relabeling::new(base.complement());

        let mut classes = Vec::new();
        let mut vertices = Vec::with_capacity(params.vertex_count());
        for d in 0..=(b + m + 1) {
            let size = if (b + m + d) % 2 == 0 { m } else { m + 1 };
            if b + size < d {
                break;
            }
            let inner = (b + size - d) / 2;
            if inner > b.min(size) || size - inner > n - b {
                if classes.is_empty() {
                    continue;
                }
                break;
            }
            let outer = size - inner;
            let start = vertices.len();
            for a in enumerate_subsets(b, inner) {
                let a = inner_map.expand(&a)?;
                for c in enumerate_subsets(n - b, outer) {
                    let c = outer_map.expand(&c)?;
                    vertices.push(a.union(&c)?);
                }
            }
            classes.push(ClassShape {
                distance: d,
                vertex_size: size,
                inner,
                outer,
                start,
                len: vertices.len() - start,
            });
        }
        let index = vertices
            .iter()
            .enumerate()
            .map(|(p, z)| (z.mask(), p))
            .collect();
        Ok(DistancePartition {
            params,
            base,
            classes,
            vertices,
            index,
        })
    }

    pub fn params(&self) -> GeometryParams {
        self.params
    }

    pub fn base(&self) -> SubsetCode {
        self.base
    }

    pub fn classes(&self) -> &[ClassShape] {
        &self.classes
    }

    /// Eccentricity of the base vertex.
    pub fn diameter(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn vertices(&self) -> &[SubsetCode] {
        &self.vertices
    }

    pub fn class(&self, i: usize) -> &[SubsetCode] {
        let c = &self.classes[i];
        &self.vertices[c.start..c.start + c.len]
    }

    pub fn position(&self, z: &SubsetCode) -> Option<usize> {
        self.index.get(&z.mask()).copied()
    }

    /// Class index of the vertex at `position`.
    pub fn class_of(&self, position: usize) -> usize {
        self.classes
            .partition_point(|c| c.start + c.len <= position)
    }
}

impl BlockLayout for DistancePartition {
    fn block_count(&self) -> usize {
        self.classes.len()
    }

    fn block_range(&self, i: usize) -> Range<usize> {
        let c = &self.classes[i];
        c.start..c.start + c.len
    }

    fn total_size(&self) -> usize {
        self.vertices.len()
    }

    fn space(&self) -> IndexSpace {
        IndexSpace::named(format!("X({},{})", self.params.n, self.params.m))
    }

    fn block_space(&self, i: usize) -> IndexSpace {
        IndexSpace::named(format!("G{i}({},{})", self.params.n, self.params.m))
    }
}

/// How strictly graph construction validates its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// `n >= 2m + 1` and an m-subset base.
    #[default]
    Strict,
    /// Anything constructible, including an (m+1)-subset base.
    Exploratory,
}

#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    pub partition: DistancePartition,
    /// Adjacency matrix in partition order.
    pub adjacency: ExactMatrix,
}

impl IncidenceGraph {
    pub fn build(params: GeometryParams, mode: Mode) -> Result<Self, GeometryError> {
        if mode == Mode::Strict {
            if params.base == BaseSide::Upper {
                return Err(GeometryError::UpperBaseNotExploratory);
            }
            params.validate(Level::Diameter)?;
        }
        let partition = DistancePartition::new(params)?;
        let adjacency = incidence_adjacency(&partition);
        Ok(IncidenceGraph {
            partition,
            adjacency,
        })
    }

    pub fn params(&self) -> GeometryParams {
        self.partition.params()
    }

    pub fn dual_idempotents(&self) -> Vec<ExactMatrix> {
        build_dual_idempotents(&self.partition)
    }

    /// Block `A_{i,j}`.
    pub fn block(&self, i: usize, j: usize) -> ExactMatrix {
        self.adjacency
            .extract_block(i, j, &self.partition)
            .expect("adjacency matches its partition")
    }

    /// Undirected edges `(u, w)` with `u < w` in vertex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .filter(|(u, w, _)| u < w)
            .map(|(u, w, _)| (u, w))
            .collect()
    }

    /// One `u v` line per edge, vertices written as lowercase hex bitmasks
    /// (element `e` is bit `e - 1`), m-subset first.
    pub fn edge_list(&self) -> String {
        let verts = self.partition.vertices();
        let mut out = String::new();
        for (u, w) in self.edges() {
            let (a, b) = if verts[u].len() < verts[w].len() {
                (verts[u], verts[w])
            } else {
                (verts[w], verts[u])
            };
            writeln!(out, "{:x} {:x}", a.mask(), b.mask()).expect("string write");
        }
        out
    }
}

fn incidence_adjacency(p: &DistancePartition) -> ExactMatrix {
    let n = p.params().n;
    let m = p.params().m;
    let rows = p.vertices().iter().map(|z| {
        let mut row: Vec<(usize, Rational)> = (0..n)
            .filter_map(|bit| {
                let neighbor = if z.len() == m {
                    (z.mask() & (1 << bit) == 0).then(|| z.mask() | (1 << bit))
                } else {
                    (z.mask() & (1 << bit) != 0).then(|| z.mask() & !(1 << bit))
                };
                neighbor.map(|mask| (p.index[&mask], Rational::one()))
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    });
    let size = p.vertices().len();
    ExactMatrix::from_sorted_rows(size, size, rows.collect::<Vec<_>>())
        .with_spaces(p.space(), p.space())
}

/// Diagonal projections onto the distance classes.
pub fn build_dual_idempotents(p: &impl BlockLayout) -> Vec<ExactMatrix> {
    let total = p.total_size();
    (0..p.block_count())
        .map(|i| {
            let range = p.block_range(i);
            ExactMatrix::from_triplets(total, total, range.map(|r| (r, r, Rational::one())))
                .with_spaces(p.space(), p.space())
        })
        .collect()
}

/// Breadth-first distances from `source`; `None` for unreachable vertices.
pub fn bfs_distances(adjacency: &ExactMatrix, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.rows()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued vertices have distances");
        for (w, _) in adjacency.row(u) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Outcome of checking the distance partition against breadth-first search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceCheck {
    pub vertices: usize,
    pub mismatches: usize,
    pub diameter: usize,
    pub expected_diameter: usize,
    pub class_sizes_ok: bool,
}

impl DistanceCheck {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.diameter == self.expected_diameter && self.class_sizes_ok
    }
}

/// Compares class membership, the closed-form classification and BFS
/// distance for every vertex.
pub fn verify_distance_partition(g: &IncidenceGraph) -> DistanceCheck {
    let p = &g.partition;
    let (n, m) = (p.params().n, p.params().m);
    let bfs = bfs_distances(
        &g.adjacency,
        p.position(&p.base()).expect("base is a vertex"),
    );
    let mut mismatches = 0;
    for (pos, z) in p.vertices().iter().enumerate() {
        let class = p.classes()[p.class_of(pos)].distance;
        let formula = match p.params().base {
            BaseSide::Lower => classify_vertex(&p.base(), z).ok(),
            BaseSide::Upper => Some((p.base().mask() ^ z.mask()).count_ones() as usize),
        };
        if bfs[pos] != Some(class) || formula != Some(class) {
            mismatches += 1;
        }
    }
    let class_sizes_ok = match p.params().base {
        BaseSide::Lower => p.classes().iter().enumerate().all(|(i, c)| {
            let expected = choose(m, m - i / 2) * choose(n - m, i.div_ceil(2));
            c.len as u64 == expected
        }),
        BaseSide::Upper => true,
    } && p.classes().iter().map(|c| c.len).sum::<usize>()
        == p.params().vertex_count();
    let eccentricity = bfs.iter().flatten().copied().max().unwrap_or(0);
    DistanceCheck {
        vertices: p.vertices().len(),
        mismatches,
        diameter: eccentricity,
        expected_diameter: match p.params().base {
            BaseSide::Lower => 2 * m + 1,
            BaseSide::Upper => p.diameter(),
        },
        class_sizes_ok,
    }
}

/// Kronecker form a block is expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockForm {
    Zero,
    /// `I ⊗ W_{i,i+1}(n-m)` from an even class to the next.
    IdentityKronInclusion,
    /// `W_{m-i-1,m-i}(m)^t ⊗ I` from an odd class to the next.
    InclusionTransposeKronIdentity,
    /// Transpose of one of the above (block below the diagonal).
    Transposed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCheck {
    pub i: usize,
    pub j: usize,
    pub form: BlockForm,
    pub passed: bool,
    /// First mismatching cell `(row, col, found, expected)`.
    pub witness: Option<(usize, usize, String, String)>,
}

/// The block `A_{i,j}` predicted by the Kronecker description, for an
/// m-subset base.
pub fn expected_block(params: GeometryParams, i: usize, j: usize) -> (BlockForm, ExactMatrix) {
    let (n, m) = (params.n, params.m);
    let class_len = |c: usize| (choose(m, m - c / 2) * choose(n - m, c.div_ceil(2))) as usize;
    if i > j {
        let (_, upper) = expected_block(params, j, i);
        let form = if upper.is_zero() {
            BlockForm::Zero
        } else {
            BlockForm::Transposed
        };
        return (form, upper.transpose());
    }
    if j != i + 1 {
        return (
            BlockForm::Zero,
            ExactMatrix::zeros(class_len(i), class_len(j)),
        );
    }
    let half = i / 2;
    if i.is_multiple_of(2) {
        let id = ExactMatrix::identity(choose(m, m - half) as usize);
        (
            BlockForm::IdentityKronInclusion,
            id.kron(&build_w(half, half + 1, n - m)),
        )
    } else {
        let id = ExactMatrix::identity(choose(n - m, half + 1) as usize);
        (
            BlockForm::InclusionTransposeKronIdentity,
            build_w(m - half - 1, m - half, m).transpose().kron(&id),
        )
    }
}

/// Checks every block of the adjacency matrix against its Kronecker form.
pub fn verify_block_structure(g: &IncidenceGraph) -> Vec<BlockCheck> {
    let params = g.params();
    let count = g.partition.classes().len();
    let mut out = Vec::with_capacity(count * count);
    for i in 0..count {
        for j in 0..count {
            let found = g.block(i, j);
            let (form, expected) = match params.base {
                BaseSide::Lower => expected_block(params, i, j),
                BaseSide::Upper => (
                    if i.abs_diff(j) == 1 {
                        BlockForm::Transposed
                    } else {
                        BlockForm::Zero
                    },
                    generic_block(&g.partition, i, j),
                ),
            };
            let witness = found
                .first_difference(&expected)
                .map(|(r, c, a, b)| (r, c, a.to_string(), b.to_string()));
            out.push(BlockCheck {
                i,
                j,
                form,
                passed: witness.is_none(),
                witness,
            });
        }
    }
    out
}

/// Kronecker form for any base side: the inner and outer inclusion matrices,
/// each oriented from the row class to the column class.
fn generic_block(p: &DistancePartition, i: usize, j: usize) -> ExactMatrix {
    let (ci, cj) = (p.classes()[i], p.classes()[j]);
    if i.abs_diff(j) != 1 {
        return ExactMatrix::zeros(ci.len, cj.len);
    }
    let b = p.params().base_size();
    let n = p.params().n;
    let orient = |a: usize, c: usize, v: usize| {
        if a <= c {
            build_w(a, c, v)
        } else {
            build_w(c, a, v).transpose()
        }
    };
    orient(ci.inner, cj.inner, b).kron(&orient(ci.outer, cj.outer, n - b))
}

/// Adjacency of the Johnson graph `J(n, m)` on colex-ordered m-subsets.
pub fn build_johnson_graph(n: usize, m: usize) -> ExactMatrix {
    let verts = enumerate_subsets(n, m);
    let rows = verts.iter().map(|y| {
        verts
            .iter()
            .enumerate()
            .filter(|(_, z)| intersect_size(y, z).expect("same ground") + 1 == m)
            .map(|(c, _)| (c, Rational::one()))
            .collect::<Vec<_>>()
    });
    ExactMatrix::from_sorted_rows(verts.len(), verts.len(), rows.collect::<Vec<_>>())
}

/// `H^{m-1}_{m,m}(n)`, the same matrix built by the intersection constructor.
pub fn johnson_graph_via_h(n: usize, m: usize) -> ExactMatrix {
    build_h(m, m, m as i64 - 1, n)
}

/// Adjacency and dual idempotents of `J(n, m)` with respect to `{1..m}`.
pub fn johnson_terwilliger_generators(n: usize, m: usize) -> Vec<ExactMatrix> {
    let verts = enumerate_subsets(n, m);
    let x = verts[0];
    let size = verts.len();
    let mut gens = vec![build_johnson_graph(n, m)];
    for d in 0..=m {
        let diag = verts
            .iter()
            .enumerate()
            .filter(|(_, z)| m - intersect_size(&x, z).expect("same ground") == d)
            .map(|(r, _)| (r, r, Rational::one()));
        let e = ExactMatrix::from_triplets(size, size, diag);
        if !e.is_zero() {
            gens.push(e);
        }
    }
    gens
}
