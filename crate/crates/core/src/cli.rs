//! Command-line front end.
//!
//! Exit status: 0 when every non-exploratory check passes, 1 when a check
//! fails (the report is still written), 2 on usage errors, parameters over
//! the resource cap, and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::graph::{BaseSide, GeometryParams, IncidenceGraph, Level, Mode};
use crate::intersection::{build_c, build_h, build_w, sweep_identities, Identity, Verdict};
use crate::linalg::{matrix_market_string, BlockLayout, ExactMatrix};
use crate::report::{ambient_size, build_report, dims_csv, dims_table, ReportOptions, Suite};
use crate::scalar::Rational;
use crate::subsets::SubsetCode;
use crate::terwilliger::{diagonal_algebra, AlgebraInstance};

/// Default bound on `|X|^2`, the ambient dimension of the matrix algebra.
pub const DEFAULT_AMBIENT_CAP: u128 = 50_000;
pub const AMBIENT_CAP_ENV: &str = "TWLAB_AMBIENT_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "twlab",
    version,
    about = "Exact Terwilliger algebra computations for J(n, m, m+1)"
)]
pub struct Cli {
    /// Run the built-in smoke checks and exit.
    #[arg(long)]
    pub seed_check: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the distance partition and block structure of the adjacency matrix.
    Graph(InstanceArgs),
    /// Check every inclusion/intersection matrix identity up to a ground-set bound.
    Identities(IdentitiesArgs),
    /// Run every check on one instance.
    Algebra(InstanceArgs),
    /// Check both explicit bases against the closure.
    Basis(InstanceArgs),
    /// Check that every E_i* B E_i* is symmetric.
    Thin(InstanceArgs),
    /// Compare the even corner with the Terwilliger algebra of J(n, m).
    Corner(InstanceArgs),
    /// Tabulate dimension formulas against the closure.
    Dims(DimsArgs),
    /// Write one matrix or the edge list.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    /// An m-subset.
    Lower,
    /// An (m+1)-subset (exploratory).
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Remove one edge from the adjacency matrix.
    DropEdge,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Allow parameters outside the theorem's hypotheses.
    #[arg(long)]
    pub exploratory: bool,
    /// Side of the bipartition the base vertex is taken from.
    #[arg(long, value_enum, default_value = "lower")]
    pub base_size: BaseArg,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record per-phase wall-clock times (the report is then not reproducible).
    #[arg(long)]
    pub timings: bool,
    #[arg(long, value_enum, hide = true)]
    pub fault: Option<Fault>,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long, default_value_t = 6)]
    pub v_max: usize,
    /// Output path for the JSON-lines records; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub m_max: usize,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    /// Skip the closure column.
    #[arg(long)]
    pub no_closure: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    MatrixMarket,
    Edges,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// adjacency, edges, johnson, estar:I, t-basis:K, W:I,J,V, C:I,J,L,V or H:I,J,L,V.
    #[arg(long)]
    pub object: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Defaults to the edge list for `edges`, Matrix Market otherwise.
    #[arg(long, value_enum)]
    pub format: Option<ExportFormat>,
    #[arg(long)]
    pub exploratory: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(passed) => {
            if passed {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    if cli.seed_check {
        return Ok(seed_check());
    }
    match cli.command {
        None => Err(usage("no command given; see --help")),
        Some(Command::Graph(a)) => run_instance(&a, Suite::Graph),
        Some(Command::Algebra(a)) => run_instance(&a, Suite::Algebra),
        Some(Command::Basis(a)) => run_instance(&a, Suite::Basis),
        Some(Command::Thin(a)) => run_instance(&a, Suite::Thin),
        Some(Command::Corner(a)) => run_instance(&a, Suite::Corner),
        Some(Command::Identities(a)) => run_identities(&a),
        Some(Command::Dims(a)) => run_dims(&a),
        Some(Command::Export(a)) => run_export(&a),
    }
}

/// The configured bound on `|X|^2`.
pub fn ambient_cap() -> Result<u128, String> {
    match std::env::var(AMBIENT_CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{AMBIENT_CAP_ENV} must be a nonnegative integer, got {s:?}")),
        Err(_) => Ok(DEFAULT_AMBIENT_CAP),
    }
}

fn check_cap(params: GeometryParams) -> Result<(), CliError> {
    let cap = ambient_cap().map_err(CliError::Usage)?;
    let ambient = ambient_size(params);
    if ambient > cap {
        return Err(usage(format!(
            "ambient size |X|^2 = {ambient} for n = {}, m = {} exceeds the cap {cap} (set {AMBIENT_CAP_ENV} to raise it)",
            params.n, params.m
        )));
    }
    Ok(())
}

fn instance_params(
    n: usize,
    m: usize,
    base: BaseArg,
    exploratory: bool,
    suite: Suite,
) -> Result<GeometryParams, CliError> {
    let base = match base {
        BaseArg::Lower => BaseSide::Lower,
        BaseArg::Upper => BaseSide::Upper,
    };
    let params = GeometryParams::new(n, m).with_base(base);
    if base == BaseSide::Upper && !exploratory {
        return Err(usage("--base-size upper requires --exploratory"));
    }
    let level = match (exploratory, suite) {
        (true, _) => Level::Construct,
        (false, Suite::Graph) => Level::Diameter,
        (false, _) => Level::Theorem,
    };
    params.validate(level).map_err(|e| {
        let hint = if exploratory {
            ""
        } else {
            " (pass --exploratory to run anyway)"
        };
        usage(format!("{e}{hint}"))
    })?;
    check_cap(params)?;
    Ok(params)
}

fn drop_first_edge(graph: &mut IncidenceGraph) {
    let Some(&(u, w)) = graph.edges().first() else {
        return;
    };
    let size = graph.adjacency.rows();
    let kept: Vec<_> = graph
        .adjacency
        .iter()
        .filter(|&(r, c, _)| (r, c) != (u, w) && (r, c) != (w, u))
        .map(|(r, c, v)| (r, c, v.clone()))
        .collect();
    graph.adjacency = ExactMatrix::from_triplets(size, size, kept)
        .with_spaces(graph.partition.space(), graph.partition.space());
}

fn run_instance(a: &InstanceArgs, suite: Suite) -> Result<bool, CliError> {
    let params = instance_params(a.n, a.m, a.base_size, a.exploratory, suite)?;
    let mode = if a.exploratory {
        Mode::Exploratory
    } else {
        Mode::Strict
    };
    let mut graph = IncidenceGraph::build(params, mode).map_err(|e| usage(e.to_string()))?;
    if a.fault == Some(Fault::DropEdge) {
        drop_first_edge(&mut graph);
    }
    let inst = AlgebraInstance::from_graph(graph);
    let report = build_report(
        &inst,
        ReportOptions {
            suite,
            timings: a.timings,
        },
    )
    .map_err(|e| usage(e.to_string()))?;
    emit(a.out.as_deref(), &report.to_json())?;
    let failures = report.checks.failures();
    if !failures.is_empty() {
        eprintln!("failed checks: {}", failures.join(", "));
    }
    for flag in &report.erratum_flags {
        eprintln!("erratum flag {}: {}", flag.name, flag.detail);
    }
    Ok(failures.is_empty())
}

fn run_identities(a: &IdentitiesArgs) -> Result<bool, CliError> {
    let records = sweep_identities(a.v_max, &Identity::ALL);
    let mut out = String::new();
    let (mut failures, mut errata) = (0, 0);
    for r in &records {
        let mut params = Map::new();
        for name in r.identity.parameter_names() {
            params.insert(name.to_string(), json!(r.params.get(name)));
        }
        let (verdict, witness) = match &r.verdict {
            Verdict::Pass => ("pass", Value::Null),
            Verdict::Fail(w) if r.identity.is_erratum_probe() => ("erratum", json!(w)),
            Verdict::Fail(w) => ("fail", json!(w)),
        };
        failures += usize::from(r.is_failure());
        errata += usize::from(r.is_erratum());
        let line = json!({
            "identity": r.identity.name(),
            "params": params,
            "verdict": verdict,
            "witness": witness,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    emit(a.out.as_deref(), &out)?;
    eprintln!(
        "{} identity instances, {failures} failures, {errata} erratum records",
        records.len()
    );
    Ok(failures == 0)
}

fn run_dims(a: &DimsArgs) -> Result<bool, CliError> {
    let cap = if a.no_closure {
        None
    } else {
        Some(ambient_cap().map_err(CliError::Usage)?)
    };
    let rows = dims_table(a.m_max, a.n_max, cap).map_err(|e| usage(e.to_string()))?;
    let text = match a.format {
        TableFormat::Csv => dims_csv(&rows),
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(rows.iter().all(|r| !r.is_failure()))
}

/// A parsed `--object` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExportObject {
    Adjacency,
    Edges,
    Johnson,
    DualIdempotent(usize),
    TBasis(usize),
    W {
        i: usize,
        j: usize,
        v: usize,
    },
    C {
        i: usize,
        j: usize,
        l: i64,
        v: usize,
    },
    H {
        i: usize,
        j: usize,
        l: i64,
        v: usize,
    },
}

impl ExportObject {
    pub fn parse(s: &str) -> Result<Self, String> {
        let (head, tail) = s.split_once(':').unwrap_or((s, ""));
        let nums = |want: usize| -> Result<Vec<i64>, String> {
            let parts: Vec<&str> = tail.split(',').filter(|p| !p.is_empty()).collect();
            if parts.len() != want {
                return Err(format!(
                    "{head} takes {want} comma-separated integers, got {tail:?}"
                ));
            }
            parts
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| format!("not an integer: {p:?}"))
                })
                .collect()
        };
        let idx = |x: i64| usize::try_from(x).map_err(|_| format!("negative index {x}"));
        match head {
            "adjacency" if tail.is_empty() => Ok(ExportObject::Adjacency),
            "edges" if tail.is_empty() => Ok(ExportObject::Edges),
            "johnson" if tail.is_empty() => Ok(ExportObject::Johnson),
            "estar" => Ok(ExportObject::DualIdempotent(idx(nums(1)?[0])?)),
            "t-basis" => Ok(ExportObject::TBasis(idx(nums(1)?[0])?)),
            "W" => {
                let p = nums(3)?;
                Ok(ExportObject::W {
                    i: idx(p[0])?,
                    j: idx(p[1])?,
                    v: idx(p[2])?,
                })
            }
            "C" | "H" => {
                let p = nums(4)?;
                let (i, j, l, v) = (idx(p[0])?, idx(p[1])?, p[2], idx(p[3])?);
                Ok(if head == "C" {
                    ExportObject::C { i, j, l, v }
                } else {
                    ExportObject::H { i, j, l, v }
                })
            }
            _ => Err(format!("unknown export object {s:?}")),
        }
    }

    fn needs_instance(&self) -> bool {
        !matches!(
            self,
            ExportObject::W { .. } | ExportObject::C { .. } | ExportObject::H { .. }
        )
    }
}

fn run_export(a: &ExportArgs) -> Result<bool, CliError> {
    let object = ExportObject::parse(&a.object).map_err(CliError::Usage)?;
    let edges = object == ExportObject::Edges;
    match a.format {
        Some(ExportFormat::Edges) if !edges => {
            return Err(usage("only --object edges has an edge-list format"))
        }
        Some(ExportFormat::MatrixMarket) if edges => {
            return Err(usage(
                "--object edges is an edge list; export adjacency for Matrix Market",
            ))
        }
        _ => {}
    }
    let text = match object {
        ExportObject::W { i, j, v }
        | ExportObject::C { i, j, v, .. }
        | ExportObject::H { i, j, v, .. } => {
            if i > v || j > v {
                return Err(usage(format!("subset sizes {i}, {j} exceed v = {v}")));
            }
            let size =
                (crate::subsets::choose(v, i) as u128) * (crate::subsets::choose(v, j) as u128);
            let cap = ambient_cap().map_err(CliError::Usage)?;
            if size > cap || v > crate::subsets::MAX_GROUND {
                return Err(usage(format!("matrix size {size} exceeds the cap {cap}")));
            }
            let m = match object {
                ExportObject::W { .. } => build_w(i, j, v),
                ExportObject::C { l, .. } => build_c(i, j, l, v),
                ExportObject::H { l, .. } => build_h(i, j, l, v),
                _ => unreachable!(),
            };
            matrix_market_string(&m)
        }
        ref obj => {
            debug_assert!(obj.needs_instance());
            let (Some(n), Some(m)) = (a.n, a.m) else {
                return Err(usage(format!("--object {} needs --n and --m", a.object)));
            };
            if *obj == ExportObject::Johnson {
                let params = GeometryParams::new(n, m);
                params
                    .validate(Level::Construct)
                    .map_err(|e| usage(e.to_string()))?;
                check_cap(params)?;
                matrix_market_string(&crate::graph::build_johnson_graph(n, m))
            } else {
                let suite = if matches!(obj, ExportObject::TBasis(_)) {
                    Suite::Algebra
                } else {
                    Suite::Graph
                };
                let params = instance_params(n, m, BaseArg::Lower, a.exploratory, suite)?;
                let mode = if a.exploratory {
                    Mode::Exploratory
                } else {
                    Mode::Strict
                };
                let inst = AlgebraInstance::new(params, mode).map_err(|e| usage(e.to_string()))?;
                match *obj {
                    ExportObject::Adjacency => matrix_market_string(&inst.graph.adjacency),
                    ExportObject::Edges => inst.graph.edge_list(),
                    ExportObject::DualIdempotent(i) => {
                        let e = inst.dual_idempotents.get(i).ok_or_else(|| {
                            usage(format!(
                                "no class {i}; the diameter is {}",
                                inst.partition().diameter()
                            ))
                        })?;
                        matrix_market_string(e)
                    }
                    ExportObject::TBasis(k) => {
                        let t = inst.compute_t().map_err(|e| usage(e.to_string()))?;
                        let b = t.basis_matrices().nth(k).ok_or_else(|| {
                            usage(format!("T has dimension {}, no basis element {k}", t.dim()))
                        })?;
                        matrix_market_string(
                            &b.with_spaces(inst.partition().space(), inst.partition().space()),
                        )
                    }
                    _ => unreachable!(),
                }
            }
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(true)
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Writes to a temporary file in the target directory, then renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| {
        io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name")
    })?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = fs::write(&tmp, bytes).and_then(|()| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Quick checks of basic facts; prints one line per check.
pub fn seed_check() -> bool {
    type Check = (&'static str, fn() -> bool);
    let checks: Vec<Check> = vec![
        ("rational arithmetic", || {
            Rational::new(1, 2) + Rational::new(1, 3) == Rational::new(5, 6)
        }),
        ("colex rank of {1,2} is 0", || {
            SubsetCode::from_elements(4, &[1, 2]).is_ok_and(|s| s.rank() == 0)
        }),
        ("W_{0,j} is all ones", || {
            build_w(0, 2, 4) == ExactMatrix::all_ones(1, 6)
        }),
        ("C^0 is all ones", || {
            build_c(2, 3, 0, 5) == ExactMatrix::all_ones(10, 10)
        }),
        ("dual idempotents sum to I", || {
            let Ok(inst) = AlgebraInstance::new(GeometryParams::new(3, 1), Mode::Strict) else {
                return false;
            };
            let size = inst.size();
            let sum = inst
                .dual_idempotents
                .iter()
                .try_fold(ExactMatrix::zeros(size, size), |acc, e| acc.add(e));
            sum.is_ok_and(|s| s == ExactMatrix::identity(size))
        }),
        ("T contains I", || {
            let Ok(inst) = AlgebraInstance::new(GeometryParams::new(5, 1), Mode::Strict) else {
                return false;
            };
            inst.compute_t().is_ok_and(|t| {
                t.contains(&ExactMatrix::identity(inst.size()))
                    .unwrap_or(false)
            })
        }),
        ("dual idempotents span a (2m+2)-dimensional algebra", || {
            let Ok(inst) = AlgebraInstance::new(GeometryParams::new(6, 2), Mode::Strict) else {
                return false;
            };
            diagonal_algebra(&inst).is_ok_and(|d| d.dim() == 6)
        }),
    ];
    let mut all = true;
    for (name, check) in checks {
        let ok = check();
        all &= ok;
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
    }
    all
}
