//! Acceptance gate: runs each criterion at its stated tolerance (exact
//! arithmetic throughout) and prints one PASS/FAIL line per criterion.
//! Exits nonzero if any criterion fails.

use std::collections::{BTreeSet, VecDeque};
use std::process::Command;
use std::time::{Duration, Instant};

use twlab::graph::{
    classify_vertex, verify_block_structure, BlockForm, GeometryParams, IncidenceGraph, Mode,
};
use twlab::intersection::{sweep_identities, Identity};
use twlab::linalg::{algebra_closure, ExactMatrix, MatrixSpace};
use twlab::report::{build_report, ReportOptions, Suite};
use twlab::scalar::Rational;
use twlab::subsets::{enumerate_subsets, intersect_size};
use twlab::terwilliger::{
    c_to_h_unitriangular, dim_closed_form, dim_sum_gr, verify_basis, verify_corner,
    verify_t_equals_m, verify_thin, AlgebraInstance, BasisKind,
};

/// `(m, n)` pairs for the block-structure and distance criteria.
const GRAPH_SET: [(usize, usize); 8] = [
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (2, 6),
    (2, 7),
    (2, 8),
    (3, 9),
];
/// `(m, n)` pairs for the algebra criteria; (3, 9) is the large case.
const ALGEBRA_SET: [(usize, usize); 7] = [(1, 3), (1, 4), (1, 5), (2, 6), (2, 7), (2, 8), (3, 9)];
const CORNER_SET: [(usize, usize); 4] = [(1, 4), (1, 5), (2, 6), (2, 7)];

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        summary: summary.into(),
    }
}

struct Computed {
    m: usize,
    n: usize,
    inst: AlgebraInstance,
    t: MatrixSpace,
    t_time: Duration,
}

fn instance(n: usize, m: usize) -> AlgebraInstance {
    AlgebraInstance::new(GeometryParams::new(n, m), Mode::Strict).expect("valid parameters")
}

/// Feasible intersection sizes of an a-subset and a b-subset of a v-set,
/// by enumerating pairs.
fn observed_levels(a: usize, b: usize, v: usize) -> usize {
    let mut seen = BTreeSet::new();
    let (left, right) = (enumerate_subsets(v, a), enumerate_subsets(v, b));
    for y in &left {
        for z in &right {
            seen.insert(intersect_size(y, z).unwrap());
        }
    }
    seen.len()
}

fn sum_gr_by_enumeration(n: usize, m: usize) -> u64 {
    let mut total = 0;
    for i in 0..=2 * m + 1 {
        for j in 0..=2 * m + 1 {
            total += observed_levels(m - i / 2, m - j / 2, m)
                * observed_levels(i.div_ceil(2), j.div_ceil(2), n - m);
        }
    }
    total as u64
}

fn bfs(adjacency: &ExactMatrix, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.rows()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for (w, _) in adjacency.row(u) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn criterion_identities() -> Outcome {
    let start = Instant::now();
    let records = sweep_identities(8, &Identity::ALL);
    let elapsed = start.elapsed();
    let defects = records.iter().filter(|r| r.is_failure()).count();
    let errata = records.iter().filter(|r| r.is_erratum()).count();
    let covered: BTreeSet<_> = records.iter().map(|r| r.identity.name()).collect();
    outcome(
        defects == 0 && covered.len() == Identity::ALL.len() && elapsed < Duration::from_secs(60),
        format!(
            "identity suite v <= 8: {} instances over {} identities, {defects} failures, {errata} erratum-probe records, {:.1?} (limit 60 s)",
            records.len(),
            covered.len(),
            elapsed
        ),
    )
}

fn criterion_blocks() -> Outcome {
    let mut bad = Vec::new();
    let mut blocks = 0;
    for (m, n) in GRAPH_SET {
        let g = IncidenceGraph::build(GeometryParams::new(n, m), Mode::Strict).unwrap();
        for b in verify_block_structure(&g) {
            blocks += 1;
            let zero_rule = b.i.abs_diff(b.j) == 1 || g.block(b.i, b.j).is_zero();
            let form_rule = (b.i.abs_diff(b.j) == 1) == (b.form != BlockForm::Zero);
            if !b.passed || !zero_rule || !form_rule {
                bad.push(format!("({m},{n}) A[{},{}]", b.i, b.j));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "block structure: {blocks} blocks over {} instances entrywise, mismatches: {bad:?}",
            GRAPH_SET.len()
        ),
    )
}

fn criterion_distance() -> Outcome {
    let mut bad = Vec::new();
    let mut vertices = 0;
    for (m, n) in GRAPH_SET {
        let g = IncidenceGraph::build(GeometryParams::new(n, m), Mode::Strict).unwrap();
        let p = &g.partition;
        let x = p.base();
        let dist = bfs(&g.adjacency, p.position(&x).unwrap());
        for (pos, z) in p.vertices().iter().enumerate() {
            vertices += 1;
            if dist[pos] != Some(classify_vertex(&x, z).unwrap()) {
                bad.push(format!("({m},{n}) {z}"));
            }
        }
        let max = dist.iter().flatten().max().copied();
        if max != Some(2 * m + 1) {
            bad.push(format!("({m},{n}) max distance {max:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("distance law: {vertices} vertices agree with BFS, max distance 2m+1; mismatches: {bad:?}"),
    )
}

fn criterion_t_eq_m(computed: &[Computed]) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for c in computed {
        let start = Instant::now();
        let m_space = c.inst.compute_m();
        let tm = verify_t_equals_m(&c.t, &m_space);
        ok &= tm.equal;
        parts.push(format!(
            "({},{}) dim {}{}",
            c.m,
            c.n,
            tm.t_dim,
            if c.m == 3 {
                format!(" in {:.1?}", c.t_time + start.elapsed())
            } else {
                String::new()
            }
        ));
        if !tm.equal {
            parts.push(format!("T dim {} vs M dim {}", tm.t_dim, tm.m_dim));
        }
    }
    let big = computed.iter().find(|c| c.m == 3).map(|c| c.t_time);
    ok &= big.is_some_and(|d| d < Duration::from_secs(30 * 60));
    outcome(ok, format!("T = M (exact rational): {}", parts.join(", ")))
}

fn criterion_bases(computed: &[Computed]) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for c in computed {
        let expected = sum_gr_by_enumeration(c.n, c.m) as usize;
        let h = c.inst.basis_family(BasisKind::H);
        let cf = c.inst.basis_family(BasisKind::C);
        let (hc, cc) = (verify_basis(&h, &c.t), verify_basis(&cf, &c.t));
        let good = hc.passed()
            && cc.passed()
            && hc.cardinality == expected
            && cc.cardinality == expected
            && c_to_h_unitriangular(&h, &cf);
        ok &= good;
        parts.push(format!(
            "({},{}) {}{}",
            c.m,
            c.n,
            hc.cardinality,
            if good { "" } else { " FAILED" }
        ));
    }
    outcome(
        ok,
        format!(
            "both bases independent, of size sum |G||R|, spanning T: {}",
            parts.join(", ")
        ),
    )
}

fn criterion_dims(computed: &[Computed]) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for c in computed {
        let sum = sum_gr_by_enumeration(c.n, c.m);
        ok &= c.t.dim() as u64 == sum && dim_sum_gr(c.n, c.m).unwrap() == sum;
    }
    // Sum form against closed form for n >= 3m+1 over a wider range.
    let mut compared = 0;
    for m in 1..=5 {
        for n in 3 * m + 1..=3 * m + 6 {
            compared += 1;
            let sum = dim_sum_gr(n, m).unwrap();
            if n <= 10 {
                ok &= sum == sum_gr_by_enumeration(n, m);
            }
            ok &= sum == dim_closed_form(n, m).unwrap();
        }
    }
    let spot = [
        ((4, 1), 25),
        ((5, 1), 26),
        ((6, 1), 26),
        ((7, 2), 79),
        ((8, 2), 80),
        ((9, 2), 80),
    ];
    for ((n, m), value) in spot {
        ok &= dim_sum_gr(n, m).unwrap() == value && dim_closed_form(n, m).unwrap() == value;
    }
    // n = 3m: both values in the report, flag iff they differ.
    for c in computed.iter().filter(|c| c.n == 3 * c.m) {
        let r = build_report(
            &c.inst,
            ReportOptions {
                suite: Suite::Basis,
                timings: false,
            },
        )
        .unwrap();
        let (sum, closed) = (r.dims.sum_gr.unwrap(), r.dims.closed_form.unwrap());
        let flagged = r
            .erratum_flags
            .iter()
            .any(|f| f.name == "closed_form_n_eq_3m");
        ok &= flagged == (sum != closed) && r.dims.t_closure == Some(sum as usize);
        notes.push(format!(
            "n=3m ({},{}): closure {}, sum {sum}, closed form {closed}, flag {}",
            c.m,
            c.n,
            r.dims.t_closure.unwrap(),
            if flagged { "raised" } else { "clear" }
        ));
    }
    outcome(
        ok,
        format!(
            "dimensions: closure = sum |G||R| on {} instances; sum = closed form on {compared} pairs with n >= 3m+1; {}",
            computed.len(),
            notes.join("; ")
        ),
    )
}

fn criterion_thin(computed: &[Computed]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for c in computed {
        let thin = verify_thin(&c.inst, &c.t).unwrap();
        checked += thin.checked;
        if !thin.passed() {
            bad.push(format!("({},{})", c.m, c.n));
        }
    }
    outcome(
        bad.is_empty(),
        format!("thinness criterion: {checked} products E_i* B E_i* symmetric; failures: {bad:?}"),
    )
}

/// `K_v` with the dual idempotents of one vertex, closed independently of
/// the library's Johnson graph builder.
fn complete_graph_terwilliger_dim(v: usize) -> usize {
    let adjacency = ExactMatrix::from_triplets(
        v,
        v,
        (0..v).flat_map(|r| {
            (0..v)
                .filter(move |&c| c != r)
                .map(move |c| (r, c, Rational::one()))
        }),
    );
    let e0 = ExactMatrix::from_triplets(v, v, [(0, 0, Rational::one())]);
    let e1 = ExactMatrix::from_triplets(v, v, (1..v).map(|r| (r, r, Rational::one())));
    algebra_closure(&[adjacency, e0, e1]).unwrap().dim()
}

fn criterion_corner() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, n) in CORNER_SET {
        let inst = instance(n, m);
        let t = inst.compute_t().unwrap();
        let c = verify_corner(&inst, &t).unwrap();
        ok &= c.passed();
        parts.push(format!("({m},{n}) {} vs {}", c.corner_dim, c.johnson_dim));
        if (m, n) == (1, 5) {
            let k5 = complete_graph_terwilliger_dim(5);
            ok &= c.corner_dim == 5 && c.johnson_dim == 5 && k5 == 5;
            parts.push(format!("K5 closure {k5}"));
        }
    }
    outcome(
        ok,
        format!("even corner vs Johnson graph algebra: {}", parts.join(", ")),
    )
}

fn criterion_determinism() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, m) in [(5, 1), (6, 2)] {
        let inst = instance(n, m);
        let opts = ReportOptions {
            suite: Suite::Algebra,
            timings: false,
        };
        let a = build_report(&inst, opts).unwrap().to_json();
        let b = build_report(&instance(n, m), opts).unwrap().to_json();
        ok &= a == b;
    }
    let bin = env!("CARGO_BIN_EXE_twlab");
    let run = || {
        Command::new(bin)
            .args(["algebra", "--n", "7", "--m", "2"])
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    ok &= first.status.success() && second.status.success() && first.stdout == second.stdout;
    notes.push(format!("CLI report {} bytes", first.stdout.len()));
    let dims = || {
        Command::new(bin)
            .args(["dims", "--m-max", "2", "--n-max", "8", "--format", "json"])
            .output()
            .expect("binary runs")
            .stdout
    };
    ok &= dims() == dims();
    outcome(
        ok,
        format!(
            "determinism: repeated library and CLI runs byte-identical ({})",
            notes.join(", ")
        ),
    )
}

fn main() {
    let start = Instant::now();
    let computed: Vec<Computed> = ALGEBRA_SET
        .iter()
        .map(|&(m, n)| {
            let inst = instance(n, m);
            let clock = Instant::now();
            let t = inst.compute_t().expect("closure");
            Computed {
                m,
                n,
                inst,
                t,
                t_time: clock.elapsed(),
            }
        })
        .collect();

    let criteria: Vec<(usize, Outcome)> = vec![
        (1, criterion_identities()),
        (2, criterion_blocks()),
        (3, criterion_distance()),
        (4, criterion_t_eq_m(&computed)),
        (5, criterion_bases(&computed)),
        (6, criterion_dims(&computed)),
        (7, criterion_thin(&computed)),
        (8, criterion_corner()),
        (9, criterion_determinism()),
    ];
    let mut failed = 0;
    for (id, o) in &criteria {
        println!(
            "{} criterion {id}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.summary
        );
        failed += usize::from(!o.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
