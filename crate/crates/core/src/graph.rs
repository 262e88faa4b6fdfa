//! Drawings, instances, paths, and their validators.
//!
//! A [`Drawing`] stores vertices by dense index `0..n`. Each vertex also
//! carries an external [`VertexId`] used by the text format; algorithms only
//! ever see dense indices.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::geometry::{
    compare_directions, point_in_segment_interior, segments_properly_cross, Point, Rational, Scalar, Segment,
};

/// External vertex identifier, as written in instance files.
pub type VertexId = u64;

/// Dense vertex index into a [`Drawing`].
pub type V = usize;

/// Structural errors raised while assembling a drawing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} declared twice")]
    DuplicateVertex(VertexId),
    #[error("edge refers to undeclared vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {0} -> {1} listed twice")]
    DuplicateEdge(VertexId, VertexId),
}

/// A digraph with exact straight-line vertex positions.
///
/// Out-neighbours are kept sorted by the direction angle of the edge,
/// smallest angle from the positive x-axis first. For upward edges this is
/// the rightmost-first order.
#[derive(Clone, Debug)]
pub struct Drawing {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, V>,
    points: Vec<Point>,
    edges: Vec<(V, V)>,
    out_adj: Vec<Vec<V>>,
    in_adj: Vec<Vec<V>>,
    grid: Option<Vec<Point<i128>>>,
}

/// Coordinates are scaled to integers when the common denominator keeps
/// every value under this bound; predicates then run on `i128`.
const GRID_LIMIT_BITS: u64 = 62;

fn integer_grid(points: &[Point]) -> Option<Vec<Point<i128>>> {
    let mut l = BigInt::one();
    for p in points {
        l = l.lcm(p.x.denom());
        l = l.lcm(p.y.denom());
    }
    let bound = BigInt::one() << GRID_LIMIT_BITS;
    let scale = |r: &Rational| -> Option<i128> {
        let v = r.numer() * (&l / r.denom());
        if v.abs() >= bound {
            return None;
        }
        v.to_i128()
    };
    points.iter().map(|p| Some(Point::from_coords(scale(&p.x)?, scale(&p.y)?))).collect()
}

impl Drawing {
    /// Builds a drawing from `(id, point)` vertices and `(id, id)` edges.
    pub fn new(vertices: Vec<(VertexId, Point)>, edges: Vec<(VertexId, VertexId)>) -> Result<Drawing, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        let mut ids = Vec::with_capacity(vertices.len());
        let mut points = Vec::with_capacity(vertices.len());
        for (id, p) in vertices {
            if index.insert(id, ids.len()).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
            ids.push(id);
            points.push(p);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut dense = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let u = *index.get(&a).ok_or(GraphError::UnknownVertex(a))?;
            let v = *index.get(&b).ok_or(GraphError::UnknownVertex(b))?;
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            dense.push((u, v));
        }
        Ok(Self::assemble(ids, index, points, dense))
    }

    /// Builds a drawing whose ids equal the dense indices.
    ///
    /// Panics on out-of-range or duplicate edges.
    pub fn from_points(points: Vec<Point>, edges: Vec<(V, V)>) -> Drawing {
        let vertices = points.into_iter().enumerate().map(|(i, p)| (i as VertexId, p)).collect();
        let edges = edges.into_iter().map(|(u, v)| (u as VertexId, v as VertexId)).collect();
        Drawing::new(vertices, edges).expect("well-formed vertex and edge lists")
    }

    fn assemble(ids: Vec<VertexId>, index: HashMap<VertexId, V>, points: Vec<Point>, edges: Vec<(V, V)>) -> Drawing {
        let n = ids.len();
        let grid = integer_grid(&points);
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for (u, adj) in out_adj.iter_mut().enumerate() {
            match &grid {
                Some(g) => sort_by_direction(adj, u, g),
                None => sort_by_direction(adj, u, &points),
            }
        }
        Drawing { ids, index, points, edges, out_adj, in_adj, grid }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn point(&self, v: V) -> &Point {
        &self.points[v]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn id(&self, v: V) -> VertexId {
        self.ids[v]
    }

    pub fn index_of(&self, id: VertexId) -> Option<V> {
        self.index.get(&id).copied()
    }

    /// Edges in insertion order, as dense index pairs.
    pub fn edges(&self) -> &[(V, V)] {
        &self.edges
    }

    /// Out-neighbours of `v`, rightmost first.
    pub fn out_neighbors(&self, v: V) -> &[V] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: V) -> &[V] {
        &self.in_adj[v]
    }

    pub fn has_edge(&self, u: V, v: V) -> bool {
        self.out_adj.get(u).is_some_and(|a| a.contains(&v))
    }

    /// Whether predicates run on the scaled integer grid.
    pub fn has_integer_grid(&self) -> bool {
        self.grid.is_some()
    }

    /// The straight-line polyline traced by a vertex sequence.
    pub fn polyline(&self, path: &Path) -> Vec<Point> {
        path.vertices.iter().map(|&v| self.points[v].clone()).collect()
    }

    /// Copy of the drawing without the given edges (by dense index pair).
    pub fn without_edges(&self, removed: &[(V, V)]) -> Drawing {
        let edges = self.edges.iter().copied().filter(|e| !removed.contains(e)).collect();
        Self::assemble(self.ids.clone(), self.index.clone(), self.points.clone(), edges)
    }

    /// A topological order of all vertices, or `None` if there is a cycle.
    pub fn topological_order(&self) -> Option<Vec<V>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = self.in_adj.iter().map(Vec::len).collect();
        let mut stack: Vec<V> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in &self.out_adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

fn sort_by_direction<T: Scalar>(adj: &mut [V], u: V, pts: &[Point<T>]) {
    let o = &pts[u];
    adj.sort_by(|&a, &b| {
        let da = (pts[a].x.clone() - o.x.clone(), pts[a].y.clone() - o.y.clone());
        let db = (pts[b].x.clone() - o.x.clone(), pts[b].y.clone() - o.y.clone());
        compare_directions((&da.0, &da.1), (&db.0, &db.1))
    });
}

/// Semantic equality: same id-to-point map and the same edge set.
impl PartialEq for Drawing {
    fn eq(&self, other: &Self) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let same_points =
            self.ids.iter().zip(&self.points).all(|(id, p)| other.index_of(*id).is_some_and(|j| &other.points[j] == p));
        if !same_points {
            return false;
        }
        let mine: HashSet<(VertexId, VertexId)> = self.edges.iter().map(|&(u, v)| (self.ids[u], self.ids[v])).collect();
        other.edges.iter().all(|&(u, v)| mine.contains(&(other.ids[u], other.ids[v])))
    }
}

impl Eq for Drawing {}

/// A drawing plus an ordered list of terminal pairs `(s_i, t_i)`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub drawing: Drawing,
    pub pairs: Vec<(V, V)>,
}

impl Instance {
    pub fn new(drawing: Drawing, pairs: Vec<(V, V)>) -> Instance {
        Instance { drawing, pairs }
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        let ids = |i: &Instance| -> Vec<(VertexId, VertexId)> {
            i.pairs.iter().map(|&(s, t)| (i.drawing.id(s), i.drawing.id(t))).collect()
        };
        self.drawing == other.drawing && ids(self) == ids(other)
    }
}

impl Eq for Instance {}

/// A vertex sequence in a drawing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub vertices: Vec<V>,
}

impl Path {
    pub fn new(vertices: Vec<V>) -> Path {
        Path { vertices }
    }

    pub fn source(&self) -> V {
        self.vertices[0]
    }

    pub fn target(&self) -> V {
        *self.vertices.last().expect("nonempty path")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: V) -> bool {
        self.vertices.contains(&v)
    }
}

impl From<Vec<V>> for Path {
    fn from(vertices: Vec<V>) -> Path {
        Path { vertices }
    }
}

/// A list of paths; index-aligned with the instance pairs when used as a
/// solution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSet {
    pub paths: Vec<Path>,
}

impl PathSet {
    pub fn new(paths: Vec<Path>) -> PathSet {
        PathSet { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Whether no vertex occurs in two different paths.
    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = HashSet::new();
        self.paths.iter().all(|p| {
            let mine: HashSet<V> = p.vertices.iter().copied().collect();
            mine.into_iter().all(|v| seen.insert(v))
        })
    }
}

/// One violated drawing or instance invariant. Vertex references use
/// external ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    DuplicatePoint { a: VertexId, b: VertexId },
    NonUpwardEdge { from: VertexId, to: VertexId },
    Crossing { first: (VertexId, VertexId), second: (VertexId, VertexId) },
    VertexOnEdge { vertex: VertexId, edge: (VertexId, VertexId) },
    Cycle,
    NoPairs,
    CoincidentTerminals { pair: usize, vertex: VertexId },
    DuplicatedTerminal { vertex: VertexId, first_pair: usize, second_pair: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicatePoint { a, b } => write!(f, "vertices {a} and {b} share a position"),
            Violation::NonUpwardEdge { from, to } => write!(f, "edge {from} -> {to} is not upward"),
            Violation::Crossing { first, second } => {
                write!(f, "edges {} -> {} and {} -> {} cross", first.0, first.1, second.0, second.1)
            }
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies on edge {} -> {}", edge.0, edge.1)
            }
            Violation::Cycle => write!(f, "the digraph has a directed cycle"),
            Violation::NoPairs => write!(f, "no terminal pairs"),
            Violation::CoincidentTerminals { pair, vertex } => {
                write!(f, "pair {pair} starts and ends at vertex {vertex}")
            }
            Violation::DuplicatedTerminal { vertex, first_pair, second_pair } => {
                write!(f, "vertex {vertex} is a terminal of pairs {first_pair} and {second_pair}")
            }
        }
    }
}

/// Outcome of a validator: every violation found, empty when valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks distinct positions, upward edges, planarity and acyclicity.
pub fn validate_drawing(d: &Drawing) -> ValidationReport {
    let mut violations = match &d.grid {
        Some(g) => geometric_violations(d, g),
        None => geometric_violations(d, &d.points),
    };
    if d.topological_order().is_none() {
        violations.push(Violation::Cycle);
    }
    ValidationReport { violations }
}

fn geometric_violations<T: Scalar>(d: &Drawing, pts: &[Point<T>]) -> Vec<Violation> {
    let mut out = Vec::new();
    let id = |v: V| d.ids[v];

    let mut by_pos: Vec<V> = (0..pts.len()).collect();
    by_pos.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    for w in by_pos.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            let (a, b) = (id(w[0]).min(id(w[1])), id(w[0]).max(id(w[1])));
            out.push(Violation::DuplicatePoint { a, b });
        }
    }

    for &(u, v) in &d.edges {
        if pts[u].y >= pts[v].y {
            out.push(Violation::NonUpwardEdge { from: id(u), to: id(v) });
        }
    }

    // sweep over x-extents: only pairs whose x-ranges overlap can interact
    let x_range = |&(u, v): &(V, V)| {
        let (a, b) = (&pts[u].x, &pts[v].x);
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    };
    let mut order: Vec<usize> = (0..d.edges.len()).collect();
    let ranges: Vec<(T, T)> = d.edges.iter().map(x_range).collect();
    order.sort_by(|&a, &b| ranges[a].0.cmp(&ranges[b].0));
    let segment = |e: usize| {
        let (u, v) = d.edges[e];
        Segment::new(pts[u].clone(), pts[v].clone())
    };
    for (i, &a) in order.iter().enumerate() {
        let sa = segment(a);
        for &b in &order[i + 1..] {
            if ranges[b].0 > ranges[a].1 {
                break;
            }
            if y_disjoint(&sa, &segment(b)) {
                continue;
            }
            if segments_properly_cross(&sa, &segment(b)) {
                let (ea, eb) = (d.edges[a], d.edges[b]);
                let (first, second) = if (id(ea.0), id(ea.1)) <= (id(eb.0), id(eb.1)) {
                    ((id(ea.0), id(ea.1)), (id(eb.0), id(eb.1)))
                } else {
                    ((id(eb.0), id(eb.1)), (id(ea.0), id(ea.1)))
                };
                out.push(Violation::Crossing { first, second });
            }
        }
    }

    // vertices resting on edge interiors, same sweep against sorted points
    let mut by_x: Vec<V> = (0..pts.len()).collect();
    by_x.sort_by(|&a, &b| pts[a].x.cmp(&pts[b].x));
    for (e, &(u, v)) in d.edges.iter().enumerate() {
        let s = segment(e);
        let (lo, hi) = &ranges[e];
        let start = by_x.partition_point(|&w| &pts[w].x < lo);
        for &w in &by_x[start..] {
            if &pts[w].x > hi {
                break;
            }
            if w != u && w != v && point_in_segment_interior(&pts[w], &s) {
                out.push(Violation::VertexOnEdge { vertex: id(w), edge: (id(u), id(v)) });
            }
        }
    }
    out
}

fn y_disjoint<T: Scalar>(a: &Segment<T>, b: &Segment<T>) -> bool {
    let lo = |s: &Segment<T>| std::cmp::min(s.a.y.clone(), s.b.y.clone());
    let hi = |s: &Segment<T>| std::cmp::max(s.a.y.clone(), s.b.y.clone());
    hi(a).cmp(&lo(b)) == Ordering::Less || hi(b).cmp(&lo(a)) == Ordering::Less
}

/// Checks that there is at least one pair and that all `2k` terminals are
/// pairwise distinct.
pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut violations = Vec::new();
    if inst.pairs.is_empty() {
        violations.push(Violation::NoPairs);
    }
    let mut owner: HashMap<V, usize> = HashMap::new();
    for (i, &(s, t)) in inst.pairs.iter().enumerate() {
        if s == t {
            violations.push(Violation::CoincidentTerminals { pair: i, vertex: inst.drawing.id(s) });
        }
        let ends: &[V] = if s == t { &[s] } else { &[s, t] };
        for &v in ends {
            if let Some(&j) = owner.get(&v) {
                violations.push(Violation::DuplicatedTerminal {
                    vertex: inst.drawing.id(v),
                    first_pair: j,
                    second_pair: i,
                });
            } else {
                owner.insert(v, i);
            }
        }
    }
    ValidationReport { violations }
}

/// Both validators combined.
pub fn validate(inst: &Instance) -> ValidationReport {
    let mut r = validate_drawing(&inst.drawing);
    r.violations.extend(validate_instance(inst).violations);
    r
}
