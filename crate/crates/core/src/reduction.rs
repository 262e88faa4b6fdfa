//! SAT to disjoint paths: the grid of crossing gadgets, witnesses built from
//! satisfying assignments, and assignments read back from solutions.
//!
//! Variable `i` owns a row, each literal occurrence `(j, t)` owns a column.
//! The row path of variable `i` enters the first gadget at `Hin` when the
//! variable is true and at `Lin` when it is false; the clause path `C_j ->
//! C_j'` runs down one column of clause `j` and can only pass a gadget
//! whose literal edge agrees with the row.
//!
//! Vertex names in [`ReductionOutput::labels`]: `V3`, `V3'`, `C2`, `C2'`,
//! fan bends `C2.f1` and `C2'.f1`, and gadget vertices such as
//! `G[1,2,1].X` or `G[1,2,1].b4.r5` (variable, clause, literal; 1-based).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::gadgets::{build_crossing_gadget, Drop, Gadget, CROSSING_WIDTH, E_MINUS, E_PLUS};
use crate::graph::{Instance, Path, PathSet, VertexId, V};

/// A literal: 1-based variable index and polarity.
pub type Literal = (usize, bool);

/// A formula in conjunctive normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub n: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl Cnf {
    pub fn satisfied_by(&self, beta: &[bool]) -> bool {
        beta.len() == self.n && self.clauses.iter().all(|c| c.iter().any(|&(v, pos)| beta[v - 1] == pos))
    }

    /// Some satisfying assignment by brute force, trying `0..2^n` in order
    /// with bit `i` as variable `i + 1`.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.n < 32, "brute force is for tiny formulas");
        (0u32..1 << self.n).map(|m| assignment_from_bits(m, self.n)).find(|b| self.satisfied_by(b))
    }

    /// Literal columns `(j, t, literal)`, 0-based, in row order.
    pub fn columns(&self) -> Vec<(usize, usize, Literal)> {
        let mut out = Vec::new();
        for (j, c) in self.clauses.iter().enumerate() {
            for (t, &lit) in c.iter().enumerate() {
                out.push((j, t, lit));
            }
        }
        out
    }

    /// DIMACS text.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.n, self.clauses.len());
        for c in &self.clauses {
            for &(v, pos) in c {
                s.push_str(&format!("{}{} ", if pos { "" } else { "-" }, v));
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Assignment from the low `n` bits of `m`.
pub fn assignment_from_bits(m: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| m >> i & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header: {text}")]
    MalformedHeader { line: usize, text: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: bad token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {literal} out of range 1..={n}")]
    LiteralOutOfRange { line: usize, literal: i64, n: usize },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
}

/// Parses DIMACS CNF. Comment lines start with `c`; a line starting with
/// `%` ends the input. Clause and literal order are kept.
pub fn parse_dimacs(text: &str) -> Result<Cnf, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let f: Vec<&str> = trimmed.split_whitespace().collect();
            let bad = || DimacsError::MalformedHeader { line, text: trimmed.to_string() };
            if header.is_some() || f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(bad());
            }
            let n = f[2].parse().map_err(|_| bad())?;
            let m = f[3].parse().map_err(|_| bad())?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else { return Err(DimacsError::MissingHeader) };
        for tok in trimmed.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| DimacsError::BadToken { line, token: tok.to_string() })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line });
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let v = lit.unsigned_abs() as usize;
            if v > n {
                return Err(DimacsError::LiteralOutOfRange { line, literal: lit, n });
            }
            current.push((v, lit > 0));
        }
    }
    let Some((n, m)) = header else { return Err(DimacsError::MissingHeader) };
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != m {
        return Err(DimacsError::ClauseCount { declared: m, found: clauses.len() });
    }
    Ok(Cnf { n, clauses })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("formula has no variables")]
    NoVariables,
    #[error("formula has no clauses")]
    NoClauses,
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("clause {clause} mentions variable {var} of {n}")]
    VariableOutOfRange { clause: usize, var: usize, n: usize },
}

/// Side of a super-grid cell in layout units.
pub const CELL: i64 = 512;
/// Height of the clause fan bends above (or below) the gadget rows.
const FAN_BEND: i64 = 168;
const FAN_APEX: i64 = 232;

/// The generated instance plus the names of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub cnf: Cnf,
    pub instance: Instance,
    pub labels: BTreeMap<String, V>,
}

impl ReductionOutput {
    /// Vertex index by structured name. Panics when absent.
    pub fn v(&self, name: &str) -> V {
        match self.labels.get(name) {
            Some(&v) => v,
            None => panic!("no vertex named {name}"),
        }
    }

    /// Index of the pair `(s, t)` named by structured names.
    pub fn pair_index(&self, s: &str, t: &str) -> Option<usize> {
        let p = (*self.labels.get(s)?, *self.labels.get(t)?);
        self.instance.pairs.iter().position(|&q| q == p)
    }

    /// Number of crossing gadgets.
    pub fn gadget_count(&self) -> usize {
        self.cnf.n * self.cnf.columns().len()
    }
}

/// Prefix of gadget `(i, j, t)`, 0-based arguments, 1-based name.
pub fn gadget_name(i: usize, j: usize, t: usize) -> String {
    format!("G[{},{},{}]", i + 1, j + 1, t + 1)
}

/// Which literal edge gadget `(variable, literal)` loses.
pub fn drop_for(var: usize, lit: Literal) -> Drop {
    match lit {
        (v, false) if v == var => Drop::EPlus,
        (v, true) if v == var => Drop::EMinus,
        _ => Drop::None,
    }
}

fn check_cnf(cnf: &Cnf) -> Result<(), ReduceError> {
    if cnf.n == 0 {
        return Err(ReduceError::NoVariables);
    }
    if cnf.clauses.is_empty() {
        return Err(ReduceError::NoClauses);
    }
    for (j, c) in cnf.clauses.iter().enumerate() {
        if c.is_empty() {
            return Err(ReduceError::EmptyClause(j + 1));
        }
        if let Some(&(var, _)) = c.iter().find(|&&(v, _)| v == 0 || v > cnf.n) {
            return Err(ReduceError::VariableOutOfRange { clause: j + 1, var, n: cnf.n });
        }
    }
    Ok(())
}

/// Builds the disjoint paths instance of `cnf`.
///
/// Layout, before the quarter turn that makes edges point up: gadget
/// `(i, c)` sits at `(CELL (c + i), -CELL i)`, so rows run along +x and
/// columns run diagonally. Clause fans live above the first row and below
/// the last one; fans of different clauses occupy disjoint x-ranges.
///
/// Pairs, in order: per variable `(V_i, W)`, every `(X, Y)`, the `(Z, W)`
/// chain and `(Z, V_i')`; then every `(C_j, C_j')`; then all box pairs.
pub fn reduce(cnf: &Cnf) -> Result<ReductionOutput, ReduceError> {
    check_cnf(cnf)?;
    let n = cnf.n;
    let cols = cnf.columns();
    let last = cols.len() - 1;
    let mut g = Gadget::new();
    let variants: HashMap<Drop, Gadget> =
        [Drop::None, Drop::EPlus, Drop::EMinus].into_iter().map(|d| (d, build_crossing_gadget(d))).collect();
    for i in 0..n {
        for (c, &(j, t, lit)) in cols.iter().enumerate() {
            let (dx, dy) = (CELL * (c + i) as i64, -CELL * i as i64);
            g.embed(&gadget_name(i, j, t), &variants[&drop_for(i + 1, lit)], dx, dy);
        }
    }
    let box_pairs = std::mem::take(&mut g.internal_pairs);
    let name = |i: usize, c: usize, local: &str| {
        let (j, t, _) = cols[c];
        format!("{}.{local}", gadget_name(i, j, t))
    };

    for i in 0..n {
        let (vi, vo) = (format!("V{}", i + 1), format!("V{}'", i + 1));
        let y = -CELL * i as i64;
        g.add_vertex(&vi, CELL * i as i64 - 64, y);
        g.add_vertex(&vo, CELL * (last + i) as i64 + CROSSING_WIDTH + 64, y);
        g.add_edge(&vi, &name(i, 0, "Hin"));
        g.add_edge(&vi, &name(i, 0, "Lin"));
        g.add_edge(&name(i, last, "Hout"), &vo);
        g.add_edge(&name(i, last, "Lout"), &vo);
        for c in 0..last {
            g.add_edge(&name(i, c, "Hout"), &name(i, c + 1, "Hin"));
            g.add_edge(&name(i, c, "Lout"), &name(i, c + 1, "Lin"));
        }
    }
    for c in 0..=last {
        for i in 0..n - 1 {
            g.add_edge(&name(i, c, "B"), &name(i + 1, c, "T"));
        }
    }

    let bottom = -CELL * (n - 1) as i64;
    let mut first = 0;
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let span = first..first + clause.len();
        let (cj, co) = (format!("C{}", j + 1), format!("C{}'", j + 1));
        g.add_vertex(&cj, CELL * first as i64 - 128, FAN_APEX);
        let end = CELL * (span.end - 1 + n - 1) as i64 + CROSSING_WIDTH + 128;
        g.add_vertex(&co, end, bottom - FAN_APEX);
        for (t, c) in span.clone().enumerate() {
            let (fin, fout) = (format!("{cj}.f{}", t + 1), format!("{co}.f{}", t + 1));
            g.add_vertex(&fin, CELL * c as i64 - 64, FAN_BEND);
            g.add_vertex(&fout, CELL * (c + n - 1) as i64 + CROSSING_WIDTH + 64, bottom - FAN_BEND);
            g.add_edge(&cj, &fin);
            g.add_edge(&fin, &name(0, c, "T"));
            g.add_edge(&name(n - 1, c, "B"), &fout);
            g.add_edge(&fout, &co);
        }
        first = span.end;
    }

    let mut xy = Vec::new();
    for i in 0..n {
        g.add_pair(&format!("V{}", i + 1), &name(i, 0, "W"));
        for c in 0..=last {
            g.add_pair(&name(i, c, "X"), &name(i, c, "Y"));
            xy.push(*g.internal_pairs.last().unwrap());
        }
        for c in 0..last {
            g.add_pair(&name(i, c, "Z"), &name(i, c + 1, "W"));
        }
        g.add_pair(&name(i, last, "Z"), &format!("V{}'", i + 1));
    }
    for j in 0..cnf.clauses.len() {
        g.add_pair(&format!("C{}", j + 1), &format!("C{}'", j + 1));
    }
    // the crossing gadgets bring their own (X, Y); it is already listed
    g.internal_pairs.extend(box_pairs.into_iter().filter(|p| !xy.contains(p)));

    let instance = g.instance(&[]);
    Ok(ReductionOutput { cnf: cnf.clone(), instance, labels: g.labels })
}

/// Gadgets whose literal edge is missing, as `(i, j, t, drop)` (0-based).
pub fn deleted_edges(out: &ReductionOutput) -> Vec<(usize, usize, usize, Drop)> {
    let d = &out.instance.drawing;
    let mut res = Vec::new();
    for i in 0..out.cnf.n {
        for (j, t, _) in out.cnf.columns() {
            let pre = gadget_name(i, j, t);
            let has = |e: (&str, &str)| d.has_edge(out.v(&format!("{pre}.{}", e.0)), out.v(&format!("{pre}.{}", e.1)));
            match (has(E_PLUS), has(E_MINUS)) {
                (true, true) => {}
                (false, _) => res.push((i, j, t, Drop::EPlus)),
                (true, false) => res.push((i, j, t, Drop::EMinus)),
            }
        }
    }
    res
}

/// Box traversal modes used by the witness templates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Through {
    TopBottom,
    LeftRight,
}

fn box_through(mode: Through) -> [&'static str; 5] {
    match mode {
        Through::TopBottom => ["et", "r1", "r5", "r9", "eb"],
        Through::LeftRight => ["el", "r2", "r5", "r8", "er"],
    }
}

/// Internal box solution that keeps the given through route free.
fn box_internals(mode: Through) -> [&'static [&'static str]; 4] {
    match mode {
        Through::TopBottom => {
            [&["1", "r3", "1_"], &["2", "r4", "r8", "2_"], &["3", "r7", "3_"], &["4", "r2", "r6", "4_"]]
        }
        Through::LeftRight => {
            [&["1", "r1", "r4", "1_"], &["2", "r3", "2_"], &["3", "r6", "r9", "3_"], &["4", "r7", "4_"]]
        }
    }
}

// Gadget traversals. `b4:tb` crosses box b4 top to bottom, `b5:lr` left to
// right.
const PLUS_ENTRY: &[&str] = &["Hin", "b1:lr", "m2", "m4", "b3:tb", "W"];
const PLUS_X: &[&str] = &["X", "b2:tb", "m3", "m5", "m6", "m8", "m10", "Y"];
const PLUS_Z: &[&str] = &["Z", "m7", "m9", "Hout"];
const PLUS_T: &[&str] = &["T", "m1", "ep", "b4:tb", "m0", "b5:lr", "b6:lr", "k6", "m11", "m12", "B"];
const MINUS_ENTRY: &[&str] = &["Lin", "m3", "m5", "W"];
const MINUS_X: &[&str] = &["X", "m2", "m4", "b4:lr", "m7", "m9", "b6:tb", "Y"];
const MINUS_Z: &[&str] = &["Z", "b5:tb", "m8", "m10", "m11", "Lout"];
const MINUS_T: &[&str] = &["T", "m1", "b1:tb", "k12", "b2:lr", "k23a", "k23b", "b3:lr", "m0", "m6", "k612", "m12", "B"];

struct Builder<'a> {
    out: &'a ReductionOutput,
    modes: HashMap<String, Through>,
}

impl Builder<'_> {
    /// Expands a template inside gadget `pre` onto `path`.
    fn walk(&mut self, pre: &str, template: &[&str], path: &mut Vec<V>) {
        for tok in template {
            if let Some((b, m)) = tok.split_once(':') {
                let mode = if m == "tb" { Through::TopBottom } else { Through::LeftRight };
                let key = format!("{pre}.{b}");
                for local in box_through(mode) {
                    path.push(self.out.v(&format!("{key}.{local}")));
                }
                self.modes.insert(key, mode);
            } else {
                path.push(self.out.v(&format!("{pre}.{tok}")));
            }
        }
    }
}

/// A solution of the reduction instance from a satisfying assignment
/// (`beta[i]` is variable `i + 1`), or `None` when `beta` has the wrong
/// length or leaves a clause unsatisfied. Each clause path runs down the
/// column of its first true literal.
pub fn witness_from_assignment(out: &ReductionOutput, beta: &[bool]) -> Option<PathSet> {
    let cnf = &out.cnf;
    if !cnf.satisfied_by(beta) {
        return None;
    }
    let cols = cnf.columns();
    let names: Vec<Vec<String>> =
        (0..cnf.n).map(|i| cols.iter().map(|&(j, t, _)| gadget_name(i, j, t)).collect()).collect();
    let mut b = Builder { out, modes: HashMap::new() };
    let mut found: HashMap<(V, V), Vec<V>> = HashMap::new();
    let mut add = |p: Vec<V>| {
        found.insert((p[0], *p.last().unwrap()), p);
    };

    for i in 0..cnf.n {
        let (entry, x, z) = if beta[i] { (PLUS_ENTRY, PLUS_X, PLUS_Z) } else { (MINUS_ENTRY, MINUS_X, MINUS_Z) };
        let row = &names[i];
        let mut p = vec![out.v(&format!("V{}", i + 1))];
        b.walk(&row[0], entry, &mut p);
        add(p);
        for (c, pre) in row.iter().enumerate() {
            let mut px = Vec::new();
            b.walk(pre, x, &mut px);
            add(px);
            let mut pz = Vec::new();
            b.walk(pre, z, &mut pz);
            match row.get(c + 1) {
                Some(next) => b.walk(next, entry, &mut pz),
                None => pz.push(out.v(&format!("V{}'", i + 1))),
            }
            add(pz);
        }
    }

    let mut first = 0;
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let t = clause.iter().position(|&(v, pos)| beta[v - 1] == pos)?;
        let c = first + t;
        let mut p = vec![out.v(&format!("C{}", j + 1)), out.v(&format!("C{}.f{}", j + 1, t + 1))];
        for i in 0..cnf.n {
            b.walk(&names[i][c], if beta[i] { PLUS_T } else { MINUS_T }, &mut p);
        }
        p.push(out.v(&format!("C{}'.f{}", j + 1, t + 1)));
        p.push(out.v(&format!("C{}'", j + 1)));
        add(p);
        first += clause.len();
    }

    for row in &names {
        for pre in row {
            for k in 1..=6 {
                let key = format!("{pre}.b{k}");
                let mode = b.modes.get(&key).copied().unwrap_or(Through::TopBottom);
                for internal in box_internals(mode) {
                    add(internal.iter().map(|l| out.v(&format!("{key}.{l}"))).collect());
                }
            }
        }
    }

    let paths = out.instance.pairs.iter().map(|p| found.remove(p).map(Path::new)).collect::<Option<Vec<_>>>()?;
    Some(PathSet::new(paths))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("solution has {got} paths, instance has {expected} pairs")]
    WrongPathCount { expected: usize, got: usize },
    #[error("no pair (V{0}, W) in the instance")]
    MissingPair(usize),
    #[error("path of V{0} visits neither Hin nor Lin of its first gadget")]
    NeitherEntry(usize),
}

/// Reads the assignment off a solution: variable `i` is true iff its row
/// path enters the first gadget at `Hin`.
pub fn assignment_from_solution(out: &ReductionOutput, ps: &PathSet) -> Result<Vec<bool>, ExtractError> {
    if ps.paths.len() != out.instance.k() {
        return Err(ExtractError::WrongPathCount { expected: out.instance.k(), got: ps.paths.len() });
    }
    let (j, t, _) = out.cnf.columns()[0];
    (0..out.cnf.n)
        .map(|i| {
            let pre = gadget_name(i, j, t);
            let idx =
                out.pair_index(&format!("V{}", i + 1), &format!("{pre}.W")).ok_or(ExtractError::MissingPair(i + 1))?;
            let path = &ps.paths[idx];
            if path.contains(out.v(&format!("{pre}.Hin"))) {
                Ok(true)
            } else if path.contains(out.v(&format!("{pre}.Lin"))) {
                Ok(false)
            } else {
                Err(ExtractError::NeitherEntry(i + 1))
            }
        })
        .collect()
}

/// Labels sidecar: one `<name> <vertex-id>` line per vertex, sorted by name.
pub fn write_labels(out: &ReductionOutput) -> String {
    let mut s = String::new();
    for (name, &v) in &out.labels {
        s.push_str(&format!("{name} {}\n", out.instance.drawing.id(v)));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("line {0}: expected `<name> <vertex-id>`")]
    Syntax(usize),
    #[error("line {line}: duplicate name {name}")]
    DuplicateName { line: usize, name: String },
    #[error("label {name} names unknown vertex {id}")]
    UnknownVertex { name: String, id: VertexId },
    #[error("missing label {0}")]
    Missing(String),
    #[error("gadget label {0} does not parse as G[i,j,t]")]
    BadGadget(String),
    #[error("gadget {0} has both literal edges removed")]
    BothDropped(String),
    #[error("column {0} has no deleted literal edge")]
    NoLiteral(String),
    #[error("column {0} has more than one deleted literal edge")]
    ManyLiterals(String),
    #[error("labels describe an invalid formula: {0}")]
    Formula(#[from] ReduceError),
}

/// Parses a labels sidecar into names and vertex ids.
pub fn parse_labels(text: &str) -> Result<BTreeMap<String, VertexId>, LabelError> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut f = trimmed.split_whitespace();
        let (Some(name), Some(id), None) = (f.next(), f.next(), f.next()) else {
            return Err(LabelError::Syntax(line));
        };
        let id: VertexId = id.parse().map_err(|_| LabelError::Syntax(line))?;
        if out.insert(name.to_string(), id).is_some() {
            return Err(LabelError::DuplicateName { line, name: name.to_string() });
        }
    }
    Ok(out)
}

fn parse_gadget(name: &str) -> Option<(usize, usize, usize)> {
    let inner = name.strip_prefix("G[")?.split_once(']')?.0;
    let v: Vec<usize> = inner.split(',').map(|x| x.parse().ok()).collect::<Option<_>>()?;
    match v[..] {
        [i, j, t] if i > 0 && j > 0 && t > 0 => Some((i - 1, j - 1, t - 1)),
        _ => None,
    }
}

/// Rebuilds a [`ReductionOutput`] from an instance and its labels sidecar.
/// The formula is recovered from which literal edge each column lost.
pub fn recover(instance: Instance, ids: &BTreeMap<String, VertexId>) -> Result<ReductionOutput, LabelError> {
    let d = &instance.drawing;
    let mut labels = BTreeMap::new();
    let mut shape: BTreeMap<usize, usize> = BTreeMap::new();
    let mut n = 0;
    for (name, &id) in ids {
        let v = d.index_of(id).ok_or_else(|| LabelError::UnknownVertex { name: name.clone(), id })?;
        labels.insert(name.clone(), v);
        if name.starts_with("G[") {
            let (i, j, t) = parse_gadget(name).ok_or_else(|| LabelError::BadGadget(name.clone()))?;
            n = n.max(i + 1);
            let e = shape.entry(j).or_insert(0);
            *e = (*e).max(t + 1);
        }
    }
    let m = shape.len();
    let get = |name: String| labels.get(&name).copied().ok_or(LabelError::Missing(name));
    let mut clauses = Vec::with_capacity(m);
    for j in 0..m {
        let len = shape.get(&j).copied().ok_or_else(|| LabelError::Missing(format!("clause {}", j + 1)))?;
        let mut clause = Vec::with_capacity(len);
        for t in 0..len {
            let mut lit = None;
            for i in 0..n {
                let pre = gadget_name(i, j, t);
                let has = |e: (&str, &str)| -> Result<bool, LabelError> {
                    Ok(d.has_edge(get(format!("{pre}.{}", e.0))?, get(format!("{pre}.{}", e.1))?))
                };
                let col = || format!("({}, {})", j + 1, t + 1);
                let found = match (has(E_PLUS)?, has(E_MINUS)?) {
                    (true, true) => continue,
                    (false, false) => return Err(LabelError::BothDropped(pre)),
                    (false, true) => (i + 1, false),
                    (true, false) => (i + 1, true),
                };
                if lit.replace(found).is_some() {
                    return Err(LabelError::ManyLiterals(col()));
                }
            }
            clause.push(lit.ok_or_else(|| LabelError::NoLiteral(format!("({}, {})", j + 1, t + 1)))?);
        }
        clauses.push(clause);
    }
    let cnf = Cnf { n, clauses };
    check_cnf(&cnf)?;
    for i in 1..=n {
        get(format!("V{i}"))?;
        get(format!("V{i}'"))?;
    }
    Ok(ReductionOutput { cnf, instance, labels })
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.iter().map(|&(v, p)| format!("{}V{v}", if p { "" } else { "~" })).collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;
    use crate::solver::verify_solution;

    fn cnf(text: &str) -> Cnf {
        parse_dimacs(&text.replace(" / ", "\n")).unwrap()
    }

    #[test]
    fn dimacs_examples() {
        assert_eq!(cnf("p cnf 1 1 / 1 0"), Cnf { n: 1, clauses: vec![vec![(1, true)]] });
        let c = cnf("p cnf 2 2 / 1 2 0 / -1 -2 0");
        assert_eq!(c.clauses, vec![vec![(1, true), (2, true)], vec![(1, false), (2, false)]]);
        assert!(matches!(parse_dimacs("p cnf 1 1\n2 0\n"), Err(DimacsError::LiteralOutOfRange { literal: 2, .. })));
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(parse_dimacs("p cnf x 1\n1 0\n"), Err(DimacsError::MalformedHeader { .. })));
        assert!(matches!(parse_dimacs("p dnf 1 1\n1 0\n"), Err(DimacsError::MalformedHeader { .. })));
        assert_eq!(parse_dimacs("1 0\n"), Err(DimacsError::MissingHeader));
        assert_eq!(parse_dimacs("p cnf 2 1\n1 -2\n"), Err(DimacsError::UnterminatedClause));
        assert!(matches!(parse_dimacs("p cnf 2 2\n1 0\n"), Err(DimacsError::ClauseCount { declared: 2, found: 1 })));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 a 0\n"), Err(DimacsError::BadToken { .. })));
    }

    #[test]
    fn dimacs_comments_and_split_clauses() {
        let c = parse_dimacs("c hi\np cnf 3 2\n1 -3\n 0 2\n0\n%\nignored").unwrap();
        assert_eq!(c.clauses, vec![vec![(1, true), (3, false)], vec![(2, true)]]);
        assert_eq!(parse_dimacs(&c.to_dimacs()).unwrap(), c);
    }

    #[test]
    fn single_literal_instance() {
        let out = reduce(&cnf("p cnf 1 1 / 1 0")).unwrap();
        assert!(validate(&out.instance).is_ok());
        assert_eq!(out.gadget_count(), 1);
        assert_eq!(deleted_edges(&out), vec![(0, 0, 0, Drop::EMinus)]);
        // 24 box pairs, (X, Y), (V1, W), (Z, V1'), (C1, C1')
        assert_eq!(out.instance.k(), 28);
    }

    #[test]
    fn single_literal_witness() {
        let out = reduce(&cnf("p cnf 1 1 / 1 0")).unwrap();
        let ps = witness_from_assignment(&out, &[true]).unwrap();
        assert!(verify_solution(&out.instance, &ps).is_ok());
        let q = &ps.paths[out.pair_index("C1", "C1'").unwrap()];
        assert!(q.vertices.windows(2).any(|w| w == [out.v("G[1,1,1].m1"), out.v("G[1,1,1].ep")]));
        assert_eq!(assignment_from_solution(&out, &ps).unwrap(), vec![true]);
        assert!(witness_from_assignment(&out, &[false]).is_none());
    }

    #[test]
    fn two_variable_witness() {
        let out = reduce(&cnf("p cnf 2 2 / 1 2 0 / -1 -2 0")).unwrap();
        assert!(validate(&out.instance).is_ok());
        for beta in [[true, false], [false, true]] {
            let ps = witness_from_assignment(&out, &beta).unwrap();
            assert!(verify_solution(&out.instance, &ps).is_ok(), "{beta:?}");
            assert_eq!(assignment_from_solution(&out, &ps).unwrap(), beta);
        }
        assert!(witness_from_assignment(&out, &[true, true]).is_none());
    }

    #[test]
    fn one_deleted_edge_per_column() {
        let out = reduce(&cnf("p cnf 3 3 / 1 -2 3 0 / -1 -1 0 / 2 -2 0")).unwrap();
        assert!(validate(&out.instance).is_ok());
        let del = deleted_edges(&out);
        assert_eq!(del.len(), out.cnf.columns().len());
        for (j, t, (v, pos)) in out.cnf.columns() {
            let want = if pos { Drop::EMinus } else { Drop::EPlus };
            assert!(del.contains(&(v - 1, j, t, want)));
        }
    }

    #[test]
    fn labels_round_trip() {
        let out = reduce(&cnf("p cnf 2 2 / 1 -2 0 / 2 0")).unwrap();
        let ids = parse_labels(&write_labels(&out)).unwrap();
        let back = recover(out.instance.clone(), &ids).unwrap();
        assert_eq!(back, out);
    }

    #[test]
    fn label_errors() {
        assert_eq!(parse_labels("V1\n"), Err(LabelError::Syntax(1)));
        assert!(matches!(parse_labels("V1 0\nV1 1\n"), Err(LabelError::DuplicateName { .. })));
    }

    #[test]
    fn reduce_rejects_degenerate_formulas() {
        assert_eq!(reduce(&Cnf { n: 1, clauses: vec![] }), Err(ReduceError::NoClauses));
        assert_eq!(reduce(&Cnf { n: 0, clauses: vec![] }), Err(ReduceError::NoVariables));
        assert_eq!(reduce(&Cnf { n: 1, clauses: vec![vec![]] }), Err(ReduceError::EmptyClause(1)));
    }
}
