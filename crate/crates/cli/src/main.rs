//! `updp`: validate, solve and inspect upward planar disjoint paths
//! instances, and generate the SAT reduction and its gadgets.

use std::fs;
use std::io::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use updp::certify::certify_all;
use updp::dot::{drawing_to_dot, hasse_to_dot};
use updp::format::{format_paths, parse_instance, parse_paths, serialize_instance};
use updp::gadgets::{build_column, build_crossing_gadget, build_routing_gadget, build_row, Drop, Entry, Gadget};
use updp::graph::{validate, Instance, PathSet, VertexId};
use updp::oracle::{exact_solve, OracleStatus, SearchBudget, DEFAULT_MAX_NODES};
use updp::order::order_closure;
use updp::reduction::{parse_dimacs, parse_labels, recover, reduce, witness_from_assignment, write_labels};
use updp::rightmost::rightmost_path;
use updp::solver::{solve_with, verify_solution, SolverOptions, Status};

mod report;

use report::Report;

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(name = "updp", version, about = "Disjoint paths on upward planar drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the drawing and the terminal pairs; exit 2 when invalid.
    Validate { instance: PathBuf },
    /// Solve with the permutation solver (or the exact oracle).
    Solve {
        instance: PathBuf,
        /// Use the exhaustive backtracking oracle instead.
        #[arg(long)]
        oracle: bool,
        /// Refuse instances with more pairs than this.
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        /// Ignore --max-k.
        #[arg(long)]
        force: bool,
        /// Try permutations on all cores.
        #[arg(long)]
        parallel: bool,
        /// Node budget of the oracle.
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u64,
        /// Write a key=value run report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Print the rightmost path between two vertex ids, or NONE.
    Rightmost {
        instance: PathBuf,
        #[arg(long)]
        from: VertexId,
        #[arg(long)]
        to: VertexId,
    },
    /// Hasse diagram (DOT) of the path order over a path list.
    Order {
        instance: PathBuf,
        #[arg(long)]
        paths: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the disjoint paths instance of a DIMACS formula.
    Reduce {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write `<name> <vertex-id>` lines here.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Solution of a reduction instance from a satisfying assignment.
    Witness {
        instance: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        /// One 0/1 character per variable, variable 1 first.
        #[arg(long)]
        assignment: String,
    },
    /// Emit a standalone gadget instance.
    Gadget {
        kind: GadgetKind,
        /// Literal edge to delete in every crossing gadget.
        #[arg(long)]
        drop: Option<DropArg>,
        /// Number of crossing gadgets in a row or column.
        #[arg(long, default_value_t = 1)]
        len: usize,
        /// Entry used by rows and columns.
        #[arg(long, value_enum, default_value_t = EntryArg::Plus)]
        entry: EntryArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// DOT for a drawing, with solution paths coloured.
    ExportDot {
        instance: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the gadget certification suite through the oracle.
    Certify {
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u64,
        /// Also fail on checks that are expected to fail.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GadgetKind {
    Routing,
    Crossing,
    Row,
    Column,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DropArg {
    #[value(name = "e+")]
    EPlus,
    #[value(name = "e-")]
    EMinus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EntryArg {
    Plus,
    Minus,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

type Res = Result<u8, CliError>;

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_to(path: Option<&FsPath>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn load(path: &FsPath) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn load_valid(path: &FsPath) -> Result<Instance, CliError> {
    let inst = load(path)?;
    let rep = validate(&inst);
    if !rep.is_ok() {
        let lines: Vec<String> = rep.violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Invalid(format!("{}: invalid instance\n{}", path.display(), lines.join("\n"))));
    }
    Ok(inst)
}

fn cmd_validate(path: &FsPath) -> Res {
    let inst = load(path)?;
    let rep = validate(&inst);
    let mut r = Report::new("validate");
    r.push("status", if rep.is_ok() { "VALID" } else { "INVALID" });
    r.push("vertices", inst.drawing.vertex_count());
    r.push("edges", inst.drawing.edge_count());
    r.push("pairs", inst.k());
    for v in &rep.violations {
        r.push("violation", v);
    }
    print!("{r}");
    Ok(if rep.is_ok() { EXIT_OK } else { EXIT_INVALID })
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    path: &FsPath,
    oracle: bool,
    max_k: usize,
    force: bool,
    parallel: bool,
    max_nodes: u64,
    report: Option<&FsPath>,
    timing: bool,
) -> Res {
    let inst = load_valid(path)?;
    let mut r = Report::new("solve");
    r.push(
        "mode",
        if oracle {
            "oracle"
        } else if parallel {
            "parallel"
        } else {
            "sequential"
        },
    );
    r.push("pairs", inst.k());
    let start = Instant::now();
    let (code, solution) = if oracle {
        let out = exact_solve(&inst, SearchBudget { max_nodes });
        r.push("status", out.status);
        r.push("nodes", out.nodes);
        let code = match out.status {
            OracleStatus::Solved => EXIT_OK,
            OracleStatus::NoSolution => EXIT_NO,
            OracleStatus::BudgetExceeded => EXIT_BUDGET,
        };
        (code, out.solution)
    } else {
        let opts = SolverOptions { parallel, max_k, force };
        match solve_with(&inst, &opts) {
            Ok(out) => {
                r.push("status", out.status);
                r.push("permutations_tried", out.stats.permutations_tried);
                r.push("rightmost_calls", out.stats.rightmost_calls);
                if let Some(p) = &out.permutation {
                    let s: Vec<String> = p.iter().map(|i| i.to_string()).collect();
                    r.push("order", s.join(" "));
                }
                (if out.status == Status::Solved { EXIT_OK } else { EXIT_NO }, out.solution)
            }
            Err(e) => {
                r.push("status", "BUDGET_EXCEEDED");
                r.push("error", &e);
                eprintln!("updp: {e}");
                (EXIT_BUDGET, None)
            }
        }
    };
    if timing {
        r.push("wall_us", start.elapsed().as_micros());
    }
    if let Some(ps) = &solution {
        let v = verify_solution(&inst, ps);
        r.push("verified", v.is_ok());
        write_to(None, &format_paths(&inst.drawing, ps))?;
    }
    eprint!("{r}");
    if let Some(p) = report {
        write_to(Some(p), &r.to_string())?;
    }
    Ok(code)
}

fn cmd_rightmost(path: &FsPath, from: VertexId, to: VertexId) -> Res {
    let inst = load(path)?;
    let d = &inst.drawing;
    let idx = |id| d.index_of(id).ok_or_else(|| CliError::Invalid(format!("unknown vertex id {id}")));
    let (s, t) = (idx(from)?, idx(to)?);
    match rightmost_path(d, s, t) {
        Some(p) => {
            let ids: Vec<String> = p.vertices.iter().map(|&v| d.id(v).to_string()).collect();
            println!("path: {}", ids.join(" "));
            Ok(EXIT_OK)
        }
        None => {
            println!("NONE");
            Ok(EXIT_NO)
        }
    }
}

fn load_paths(inst: &Instance, path: &FsPath) -> Result<PathSet, CliError> {
    parse_paths(&read(path)?, &inst.drawing).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn cmd_order(path: &FsPath, paths: &FsPath, output: Option<&FsPath>) -> Res {
    let inst = load(path)?;
    let ps = load_paths(&inst, paths)?;
    let d = &inst.drawing;
    for (i, p) in ps.paths.iter().enumerate() {
        if p.is_empty() || p.vertices.windows(2).any(|w| !d.has_edge(w[0], w[1])) {
            return Err(CliError::Invalid(format!("path {i} is not a path of the drawing")));
        }
    }
    if !ps.pairwise_disjoint() {
        return Err(CliError::Invalid("paths are not pairwise vertex disjoint".into()));
    }
    match order_closure(&ps, d) {
        Ok(c) => {
            write_to(output, &hasse_to_dot(&c, &ps, d))?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("updp: {e}");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_reduce(cnf: &FsPath, output: Option<&FsPath>, labels: Option<&FsPath>) -> Res {
    let text = read(cnf)?;
    let f = parse_dimacs(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", cnf.display())))?;
    let out = reduce(&f).map_err(|e| CliError::Invalid(e.to_string()))?;
    write_to(output, &serialize_instance(&out.instance))?;
    if let Some(l) = labels {
        write_to(Some(l), &write_labels(&out))?;
    }
    let mut r = Report::new("reduce");
    r.push("variables", f.n);
    r.push("clauses", f.clauses.len());
    r.push("gadgets", out.gadget_count());
    r.push("vertices", out.instance.drawing.vertex_count());
    r.push("pairs", out.instance.k());
    eprint!("{r}");
    Ok(EXIT_OK)
}

fn cmd_witness(path: &FsPath, labels: &FsPath, assignment: &str) -> Res {
    let inst = load_valid(path)?;
    let ids = parse_labels(&read(labels)?).map_err(|e| CliError::Invalid(format!("{}: {e}", labels.display())))?;
    let out = recover(inst, &ids).map_err(|e| CliError::Invalid(e.to_string()))?;
    let beta = assignment
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::Usage(format!("assignment must be 0/1 characters, got `{c}`"))),
        })
        .collect::<Result<Vec<bool>, _>>()?;
    if beta.len() != out.cnf.n {
        return Err(CliError::Usage(format!(
            "assignment has {} values, formula has {} variables",
            beta.len(),
            out.cnf.n
        )));
    }
    let Some(ps) = witness_from_assignment(&out, &beta) else {
        eprintln!("updp: assignment does not satisfy {}", out.cnf);
        return Ok(EXIT_NO);
    };
    let v = verify_solution(&out.instance, &ps);
    if !v.is_ok() {
        let lines: Vec<String> = v.violations.iter().map(|x| x.to_string()).collect();
        return Err(CliError::Invalid(format!("witness failed verification\n{}", lines.join("\n"))));
    }
    write_to(None, &format_paths(&out.instance.drawing, &ps))?;
    Ok(EXIT_OK)
}

fn gadget_labels(g: &Gadget) -> String {
    g.labels.iter().map(|(name, v)| format!("{name} {v}\n")).collect()
}

fn cmd_gadget(
    kind: GadgetKind,
    drop: Option<DropArg>,
    len: usize,
    entry: EntryArg,
    output: Option<&FsPath>,
    labels: Option<&FsPath>,
) -> Res {
    let drop = match drop {
        None => Drop::None,
        Some(DropArg::EPlus) => Drop::EPlus,
        Some(DropArg::EMinus) => Drop::EMinus,
    };
    let entry = match entry {
        EntryArg::Plus => Entry::Plus,
        EntryArg::Minus => Entry::Minus,
    };
    if len == 0 {
        return Err(CliError::Usage("--len must be at least 1".into()));
    }
    let g = match kind {
        GadgetKind::Routing => build_routing_gadget(),
        GadgetKind::Crossing => build_crossing_gadget(drop),
        GadgetKind::Row => build_row(len, entry),
        GadgetKind::Column => build_column(len, &vec![drop; len], &vec![entry; len]),
    };
    write_to(output, &serialize_instance(&g.instance(&[])))?;
    if let Some(l) = labels {
        write_to(Some(l), &gadget_labels(&g))?;
    }
    Ok(EXIT_OK)
}

fn cmd_export_dot(path: &FsPath, solution: Option<&FsPath>, output: Option<&FsPath>) -> Res {
    let inst = load(path)?;
    let ps = solution.map(|s| load_paths(&inst, s)).transpose()?;
    write_to(output, &drawing_to_dot(&inst.drawing, ps.as_ref()))?;
    Ok(EXIT_OK)
}

fn cmd_certify(max_nodes: u64, strict: bool) -> Res {
    let cert = certify_all(SearchBudget { max_nodes });
    for c in &cert.checks {
        println!("{c}");
    }
    let passed = cert.checks.iter().filter(|c| c.passed).count();
    let deviations = cert.checks.iter().filter(|c| c.known_deviation).count();
    println!("checks={} passed={passed} known_deviations={deviations} nodes={}", cert.checks.len(), cert.total_nodes());
    let ok = if strict { cert.checks.iter().all(|c| c.passed) } else { cert.ok() };
    Ok(if ok { EXIT_OK } else { EXIT_NO })
}

fn run(cli: Cli) -> Res {
    match cli.command {
        Command::Validate { instance } => cmd_validate(&instance),
        Command::Solve { instance, oracle, max_k, force, parallel, max_nodes, report, timing } => {
            cmd_solve(&instance, oracle, max_k, force, parallel, max_nodes, report.as_deref(), timing)
        }
        Command::Rightmost { instance, from, to } => cmd_rightmost(&instance, from, to),
        Command::Order { instance, paths, output } => cmd_order(&instance, &paths, output.as_deref()),
        Command::Reduce { cnf, output, labels } => cmd_reduce(&cnf, output.as_deref(), labels.as_deref()),
        Command::Witness { instance, labels, assignment } => cmd_witness(&instance, &labels, &assignment),
        Command::Gadget { kind, drop, len, entry, output, labels } => {
            cmd_gadget(kind, drop, len, entry, output.as_deref(), labels.as_deref())
        }
        Command::ExportDot { instance, solution, output } => {
            cmd_export_dot(&instance, solution.as_deref(), output.as_deref())
        }
        Command::Certify { max_nodes, strict } => cmd_certify(max_nodes, strict),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("updp: {e}");
            ExitCode::from(e.code())
        }
    }
}
