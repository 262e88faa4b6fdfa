//! The permutation solver: for each routing order, route every pair along
//! its rightmost path in what is left of the drawing.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use crate::graph::{Instance, Path, PathSet, VertexId, V};
use crate::rightmost::{forward_mask, rightmost_path_avoiding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Solved,
    NoSolution,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Solved => "SOLVED",
            Status::NoSolution => "NO_SOLUTION",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub permutations_tried: u64,
    pub rightmost_calls: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    /// Paths in pair index order.
    pub solution: Option<PathSet>,
    /// The routing order that succeeded.
    pub permutation: Option<Vec<usize>>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    fn none(stats: SolveStats) -> Self {
        SolveOutcome { status: Status::NoSolution, solution: None, permutation: None, stats }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub parallel: bool,
    pub max_k: usize,
    /// Ignore `max_k`.
    pub force: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { parallel: false, max_k: 10, force: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("{k} pairs exceed the limit of {max}; raise the limit or force")]
    TooManyPairs { k: usize, max: usize },
}

fn route(inst: &Instance, order: &[usize], calls: &mut u64) -> Option<PathSet> {
    let d = &inst.drawing;
    let mut blocked = vec![false; d.vertex_count()];
    let mut paths: Vec<Option<Path>> = vec![None; inst.k()];
    for &i in order {
        let (s, t) = inst.pairs[i];
        *calls += 1;
        let p = rightmost_path_avoiding(d, s, t, &blocked)?;
        for &v in &p.vertices {
            blocked[v] = true;
        }
        paths[i] = Some(p);
    }
    Some(PathSet::new(paths.into_iter().map(|p| p.expect("order is a permutation")).collect()))
}

/// Routes pairs in the given order, each along its rightmost path after
/// deleting every vertex of the paths already routed. Returns the paths in
/// pair index order, or `None` at the first unroutable pair.
pub fn route_in_order(inst: &Instance, order: &[usize]) -> Option<PathSet> {
    route(inst, order, &mut 0)
}

/// Steps `perm` to its lexicographic successor; `false` after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// The permutation of `0..k` with lexicographic rank `rank`.
pub fn nth_permutation(k: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..k).collect();
    let mut out = Vec::with_capacity(k);
    for i in (0..k).rev() {
        let f = factorial(i);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn obviously_unsolvable(inst: &Instance) -> bool {
    let d = &inst.drawing;
    let free = vec![false; d.vertex_count()];
    inst.pairs.iter().any(|&(s, t)| !forward_mask(d, s, &free)[t])
}

/// Decides the instance by trying every routing order lexicographically.
/// Returns the first success. Assumes a validated instance.
pub fn solve(inst: &Instance) -> SolveOutcome {
    let mut stats = SolveStats::default();
    if obviously_unsolvable(inst) {
        return SolveOutcome::none(stats);
    }
    let mut perm: Vec<usize> = (0..inst.k()).collect();
    loop {
        stats.permutations_tried += 1;
        if let Some(ps) = route(inst, &perm, &mut stats.rightmost_calls) {
            return SolveOutcome { status: Status::Solved, solution: Some(ps), permutation: Some(perm), stats };
        }
        if !next_permutation(&mut perm) {
            return SolveOutcome::none(stats);
        }
    }
}

/// Like [`solve`], but enforces the `k` guardrail and can spread
/// permutations over threads. The reported permutation is the
/// lexicographically first successful one in both modes.
pub fn solve_with(inst: &Instance, opts: &SolverOptions) -> Result<SolveOutcome, SolveError> {
    let k = inst.k();
    if k > opts.max_k && !opts.force {
        return Err(SolveError::TooManyPairs { k, max: opts.max_k });
    }
    if !opts.parallel || k < 2 {
        return Ok(solve(inst));
    }
    if obviously_unsolvable(inst) {
        return Ok(SolveOutcome::none(SolveStats::default()));
    }
    let tried = AtomicU64::new(0);
    let calls = AtomicU64::new(0);
    let found = (0..factorial(k)).into_par_iter().find_map_first(|rank| {
        let perm = nth_permutation(k, rank);
        let mut c = 0;
        let r = route(inst, &perm, &mut c);
        tried.fetch_add(1, AtomicOrdering::Relaxed);
        calls.fetch_add(c, AtomicOrdering::Relaxed);
        r.map(|ps| (perm, ps))
    });
    let stats = SolveStats { permutations_tried: tried.into_inner(), rightmost_calls: calls.into_inner() };
    Ok(match found {
        Some((perm, ps)) => SolveOutcome { status: Status::Solved, solution: Some(ps), permutation: Some(perm), stats },
        None => SolveOutcome::none(stats),
    })
}

/// One reason a path set fails to solve an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionViolation {
    WrongPathCount { expected: usize, found: usize },
    EmptyPath { pair: usize },
    UnknownVertex { pair: usize, index: V },
    WrongEndpoints { pair: usize },
    MissingEdge { pair: usize, from: VertexId, to: VertexId },
    RepeatedVertex { pair: usize, vertex: VertexId },
    SharedVertex { vertex: VertexId, first_pair: usize, second_pair: usize },
}

impl fmt::Display for SolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SolutionViolation::*;
        match self {
            WrongPathCount { expected, found } => write!(f, "expected {expected} paths, found {found}"),
            EmptyPath { pair } => write!(f, "path {pair} is empty"),
            UnknownVertex { pair, index } => write!(f, "path {pair} uses nonexistent vertex index {index}"),
            WrongEndpoints { pair } => write!(f, "path {pair} does not link its terminals"),
            MissingEdge { pair, from, to } => write!(f, "path {pair} hops {from} -> {to}, which is not an edge"),
            RepeatedVertex { pair, vertex } => write!(f, "path {pair} visits vertex {vertex} twice"),
            SharedVertex { vertex, first_pair, second_pair } => {
                write!(f, "vertex {vertex} is on paths {first_pair} and {second_pair}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionReport {
    pub violations: Vec<SolutionViolation>,
}

impl SolutionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks path count, endpoints, edges, simplicity and full vertex
/// disjointness.
pub fn verify_solution(inst: &Instance, ps: &PathSet) -> SolutionReport {
    use SolutionViolation::*;
    let d = &inst.drawing;
    let mut violations = Vec::new();
    if ps.len() != inst.k() {
        violations.push(WrongPathCount { expected: inst.k(), found: ps.len() });
    }
    let mut owner: HashMap<V, usize> = HashMap::new();
    for (i, (p, &(s, t))) in ps.paths.iter().zip(&inst.pairs).enumerate() {
        if p.is_empty() {
            violations.push(EmptyPath { pair: i });
            continue;
        }
        if let Some(&bad) = p.vertices.iter().find(|&&v| v >= d.vertex_count()) {
            violations.push(UnknownVertex { pair: i, index: bad });
            continue;
        }
        if p.source() != s || p.target() != t {
            violations.push(WrongEndpoints { pair: i });
        }
        for w in p.vertices.windows(2) {
            if !d.has_edge(w[0], w[1]) {
                violations.push(MissingEdge { pair: i, from: d.id(w[0]), to: d.id(w[1]) });
            }
        }
        for &v in &p.vertices {
            match owner.get(&v) {
                Some(&j) if j == i => violations.push(RepeatedVertex { pair: i, vertex: d.id(v) }),
                Some(&j) => violations.push(SharedVertex { vertex: d.id(v), first_pair: j, second_pair: i }),
                None => {
                    owner.insert(v, i);
                }
            }
        }
    }
    SolutionReport { violations }
}
