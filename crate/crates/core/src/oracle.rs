//! Exact exponential reference solvers.
//!
//! The backtracking search places pairs one at a time. A pair's path is
//! grown by depth-first search; a partial path is abandoned as soon as its
//! head can no longer reach the pair's target through free vertices, and
//! after every placement each remaining pair must still be connectable.

use std::collections::HashSet;
use std::fmt;

use crate::graph::{Drawing, Instance, Path, PathSet, V};
use crate::order::precedes_polylines;
use crate::rightmost::backward_mask;

/// Default node budget for [`exact_solve`].
pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: DEFAULT_MAX_NODES }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleStatus {
    Solved,
    NoSolution,
    BudgetExceeded,
}

impl fmt::Display for OracleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleStatus::Solved => "SOLVED",
            OracleStatus::NoSolution => "NO_SOLUTION",
            OracleStatus::BudgetExceeded => "BUDGET_EXCEEDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub status: OracleStatus,
    pub solution: Option<PathSet>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("path enumeration hit the limit of {0} paths")]
    Truncated(usize),
    #[error("no enumerated path satisfies the rightmost definition")]
    NoQualifier,
    #[error("{0} enumerated paths satisfy the rightmost definition")]
    AmbiguousQualifier(usize),
}

/// All simple `s`-`t` paths in DFS order (rightmost neighbours first),
/// stopping after `limit` paths. The flag is true when the list was cut.
pub fn enumerate_st_paths(d: &Drawing, s: V, t: V, limit: usize) -> (Vec<Path>, bool) {
    let all = vec![true; d.vertex_count()];
    let reaches_t = backward_mask(d, t, &all);
    let mut out = Vec::new();
    if !reaches_t[s] {
        return (out, false);
    }
    let mut truncated = false;
    // explicit stack of (vertex, next neighbour index)
    let mut stack: Vec<(V, usize)> = vec![(s, 0)];
    let mut on_path = vec![false; d.vertex_count()];
    on_path[s] = true;
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        if u == t {
            if out.len() == limit {
                truncated = true;
                break;
            }
            out.push(Path::new(stack.iter().map(|&(v, _)| v).collect()));
            on_path[u] = false;
            stack.pop();
            continue;
        }
        let nbrs = d.out_neighbors(u);
        if *next == nbrs.len() {
            on_path[u] = false;
            stack.pop();
            continue;
        }
        let w = nbrs[*next];
        *next += 1;
        if reaches_t[w] && !on_path[w] {
            on_path[w] = true;
            stack.push((w, 0));
        }
    }
    (out, truncated)
}

/// The rightmost `s`-`t` path found by checking the definition against
/// every enumerated path: `P` qualifies when no other `s`-`t` path ever
/// lies strictly right of it. Errors unless exactly one path qualifies.
pub fn rightmost_by_definition(d: &Drawing, s: V, t: V, limit: usize) -> Result<Option<Path>, OracleError> {
    let (paths, truncated) = enumerate_st_paths(d, s, t, limit);
    if truncated {
        return Err(OracleError::Truncated(limit));
    }
    if paths.is_empty() {
        return Ok(None);
    }
    let polys: Vec<_> = paths.iter().map(|p| d.polyline(p)).collect();
    let qualifiers: Vec<usize> = (0..paths.len())
        .filter(|&i| (0..paths.len()).all(|j| i == j || !precedes_polylines(&polys[i], &polys[j])))
        .collect();
    match qualifiers.as_slice() {
        [] => Err(OracleError::NoQualifier),
        [i] => Ok(Some(paths[*i].clone())),
        many => Err(OracleError::AmbiguousQualifier(many.len())),
    }
}

enum Flow {
    Continue,
    Found,
    Stop,
}

struct Exceeded;

/// Backtracking state. Pairs in `order` are placed one after another;
/// the first `primary` of them are enumerated exhaustively. Pairs in
/// `rest` only need one completion and are split into independent groups
/// (pairs whose candidate regions share no vertex) before every placement.
struct Search<'a> {
    d: &'a Drawing,
    pairs: &'a [(V, V)],
    order: Vec<usize>,
    primary: usize,
    rest: Vec<usize>,
    used: Vec<bool>,
    owner: Vec<Option<usize>>,
    paths: Vec<Vec<V>>,
    placed: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, order: Vec<usize>, primary: usize, rest: Vec<usize>, budget: SearchBudget) -> Self {
        let n = inst.drawing.vertex_count();
        let mut owner = vec![None; n];
        for (i, &(s, t)) in inst.pairs.iter().enumerate() {
            owner[s] = Some(i);
            owner[t] = Some(i);
        }
        Search {
            d: &inst.drawing,
            pairs: &inst.pairs,
            order,
            primary,
            rest,
            used: vec![false; n],
            owner,
            paths: vec![Vec::new(); inst.k()],
            placed: Vec::new(),
            nodes: 0,
            max_nodes: budget.max_nodes,
        }
    }

    fn tick(&mut self) -> Result<(), Exceeded> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(Exceeded)
        } else {
            Ok(())
        }
    }

    fn free(&self, v: V, pair: usize) -> bool {
        !self.used[v] && self.owner[v].is_none_or(|o| o == pair)
    }

    /// Whether `from` reaches `to` through free vertices for `pair`.
    fn connectable(&self, from: V, to: V, pair: usize) -> bool {
        let mut seen = vec![false; self.d.vertex_count()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for &w in self.d.out_neighbors(u) {
                if !seen[w] && self.free(w, pair) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    fn remaining_connectable(&self, pos: usize) -> bool {
        self.order[pos..].iter().chain(&self.rest).all(|&j| {
            let (s, t) = self.pairs[j];
            self.connectable(s, t, j)
        })
    }

    fn place(&mut self, pos: usize, sink: &mut dyn FnMut(&[Vec<V>]) -> bool) -> Result<Flow, Exceeded> {
        if pos == self.order.len() {
            let mark = self.placed.len();
            let rest = self.rest.clone();
            if !self.solve_rest(rest)? {
                return Ok(Flow::Continue);
            }
            let keep = sink(&self.paths);
            self.unplace_to(mark);
            return Ok(if keep { Flow::Found } else { Flow::Stop });
        }
        let i = self.order[pos];
        let (s, t) = self.pairs[i];
        self.used[s] = true;
        self.paths[i].push(s);
        let r = self.extend(pos, i, t, sink);
        self.paths[i].pop();
        self.used[s] = false;
        r
    }

    fn extend(
        &mut self,
        pos: usize,
        i: usize,
        t: V,
        sink: &mut dyn FnMut(&[Vec<V>]) -> bool,
    ) -> Result<Flow, Exceeded> {
        self.tick()?;
        let head = *self.paths[i].last().unwrap();
        if head == t {
            if !self.remaining_connectable(pos + 1) {
                return Ok(Flow::Continue);
            }
            return self.place(pos + 1, sink);
        }
        let d = self.d;
        for &w in d.out_neighbors(head) {
            if !self.free(w, i) || !self.connectable(w, t, i) {
                continue;
            }
            self.used[w] = true;
            self.paths[i].push(w);
            let r = self.extend(pos, i, t, sink);
            self.paths[i].pop();
            self.used[w] = false;
            match r? {
                Flow::Continue => {}
                Flow::Found if pos < self.primary => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Continue)
    }

    /// Clears every pair placed by the decomposed phase after `mark`.
    fn unplace_to(&mut self, mark: usize) {
        while self.placed.len() > mark {
            let i = self.placed.pop().unwrap();
            for &v in &self.paths[i] {
                self.used[v] = false;
            }
            self.paths[i].clear();
        }
    }

    /// Free vertices lying on some `s`-`t` path of `pair`.
    fn region(&self, pair: usize) -> Vec<bool> {
        let (s, t) = self.pairs[pair];
        let n = self.d.vertex_count();
        let mut fwd = vec![false; n];
        fwd[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in self.d.out_neighbors(u) {
                if !fwd[w] && self.free(w, pair) {
                    fwd[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut both = vec![false; n];
        if !fwd[t] {
            return both;
        }
        both[t] = true;
        stack.push(t);
        while let Some(v) = stack.pop() {
            for &u in self.d.in_neighbors(v) {
                if !both[u] && fwd[u] {
                    both[u] = true;
                    stack.push(u);
                }
            }
        }
        both
    }

    /// Routes every pair of `rest`, leaving the paths in place on success.
    fn solve_rest(&mut self, rest: Vec<usize>) -> Result<bool, Exceeded> {
        if rest.is_empty() {
            return Ok(true);
        }
        let n = self.d.vertex_count();
        let mut parent: Vec<usize> = (0..rest.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut claim: Vec<Option<usize>> = vec![None; n];
        let mut sizes = vec![0usize; rest.len()];
        for (a, &pair) in rest.iter().enumerate() {
            let region = self.region(pair);
            let (s, _) = self.pairs[pair];
            if !region[s] {
                return Ok(false);
            }
            for v in (0..n).filter(|&v| region[v]) {
                sizes[a] += 1;
                match claim[v] {
                    None => claim[v] = Some(a),
                    Some(b) => {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        parent[ra] = rb;
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of = vec![usize::MAX; rest.len()];
        for a in 0..rest.len() {
            let r = find(&mut parent, a);
            if group_of[r] == usize::MAX {
                group_of[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[group_of[r]].push(a);
        }
        // tightest pair first inside each group, smallest groups first
        for g in &mut groups {
            g.sort_by_key(|&a| sizes[a]);
        }
        groups.sort_by_key(|g| g.len());
        let mark = self.placed.len();
        for g in groups {
            let pairs: Vec<usize> = g.iter().map(|&a| rest[a]).collect();
            if !self.solve_group(pairs)? {
                self.unplace_to(mark);
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn solve_group(&mut self, group: Vec<usize>) -> Result<bool, Exceeded> {
        let i = group[0];
        let others = group[1..].to_vec();
        let (s, t) = self.pairs[i];
        self.used[s] = true;
        self.paths[i].push(s);
        let r = self.extend_rest(i, t, &others)?;
        if !r {
            self.paths[i].pop();
            self.used[s] = false;
        }
        Ok(r)
    }

    fn extend_rest(&mut self, i: usize, t: V, others: &[usize]) -> Result<bool, Exceeded> {
        self.tick()?;
        let head = *self.paths[i].last().unwrap();
        if head == t {
            self.placed.push(i);
            if self.solve_rest(others.to_vec())? {
                return Ok(true);
            }
            self.placed.pop();
            return Ok(false);
        }
        let d = self.d;
        for &w in d.out_neighbors(head) {
            if !self.free(w, i) || !self.connectable(w, t, i) {
                continue;
            }
            self.used[w] = true;
            self.paths[i].push(w);
            if self.extend_rest(i, t, others)? {
                return Ok(true);
            }
            self.paths[i].pop();
            self.used[w] = false;
        }
        Ok(false)
    }
}

fn to_pathset(paths: &[Vec<V>]) -> PathSet {
    PathSet::new(paths.iter().map(|p| Path::new(p.clone())).collect())
}

fn run(mut search: Search<'_>, cap: usize) -> Result<(Vec<PathSet>, u64), u64> {
    let mut solutions = Vec::new();
    if search.remaining_connectable(0) {
        let mut sink = |paths: &[Vec<V>]| {
            solutions.push(to_pathset(paths));
            solutions.len() < cap
        };
        if search.place(0, &mut sink).is_err() {
            return Err(search.nodes);
        }
    }
    Ok((solutions, search.nodes))
}

fn outcome(result: Result<(Vec<PathSet>, u64), u64>) -> OracleOutcome {
    match result {
        Err(nodes) => OracleOutcome { status: OracleStatus::BudgetExceeded, solution: None, nodes },
        Ok((mut sols, nodes)) => match sols.pop() {
            Some(s) => OracleOutcome { status: OracleStatus::Solved, solution: Some(s), nodes },
            None => OracleOutcome { status: OracleStatus::NoSolution, solution: None, nodes },
        },
    }
}

/// Exact decision by plain backtracking over pairs in input order.
pub fn exact_solve(inst: &Instance, budget: SearchBudget) -> OracleOutcome {
    let order: Vec<usize> = (0..inst.k()).collect();
    exact_solve_in_order(inst, order, budget)
}

/// [`exact_solve`] with an explicit pair processing order.
pub fn exact_solve_in_order(inst: &Instance, order: Vec<usize>, budget: SearchBudget) -> OracleOutcome {
    let k = order.len();
    outcome(run(Search::new(inst, order, k, Vec::new(), budget), 1))
}

/// Exact decision that splits the pairs into independent groups before
/// every placement. Same answers as [`exact_solve`], far fewer nodes on
/// instances made of loosely coupled parts such as gadgets.
pub fn exact_solve_decomposed(inst: &Instance, budget: SearchBudget) -> OracleOutcome {
    outcome(run(Search::new(inst, Vec::new(), 0, (0..inst.k()).collect(), budget), 1))
}

/// Result of [`enumerate_solutions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// One full solution per distinct routing of the primary pairs.
    pub solutions: Vec<PathSet>,
    /// False when the cap stopped the search early.
    pub complete: bool,
    pub nodes: u64,
}

/// Enumerates solutions, distinguishing them only by the paths of the
/// `primary` pairs. For each distinct routing of the primary pairs that
/// extends to a full solution, one completion of the other pairs is
/// reported. Stops once `cap` solutions are found and a further one
/// exists; `complete` then is false. Passing every pair index as
/// `primary` enumerates all solutions.
pub fn enumerate_solutions(
    inst: &Instance,
    primary: &[usize],
    cap: usize,
    budget: SearchBudget,
) -> Result<Enumeration, OracleError> {
    let wanted: HashSet<usize> = primary.iter().copied().collect();
    let rest: Vec<usize> = (0..inst.k()).filter(|i| !wanted.contains(i)).collect();
    let search = Search::new(inst, primary.to_vec(), primary.len(), rest, budget);
    match run(search, cap.saturating_add(1)) {
        Err(_) => Err(OracleError::BudgetExceeded(budget.max_nodes)),
        Ok((mut solutions, nodes)) => {
            let complete = solutions.len() <= cap;
            solutions.truncate(cap);
            Ok(Enumeration { solutions, complete, nodes })
        }
    }
}
