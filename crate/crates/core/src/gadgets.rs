//! Routing gadget, crossing gadget, rows and columns.
//!
//! Gadgets are laid out in a left-to-right frame where every edge points in
//! the +x direction. [`Gadget::drawing`] rotates by 90 degrees
//! counterclockwise, `(x, y) -> (-y, x)`, so edges point upward.
//!
//! Routing boxes inside a crossing gadget get four stub vertices `et`, `el`
//! (entries) and `er`, `eb` (exits); external edges attach to those. Edge
//! bends become plain degree-two vertices (`k12`, `k23a`, `k23b`, `k6`,
//! `k612`, and `ep`, the bend of the top edge `e+`).

use std::collections::BTreeMap;

use crate::geometry::{int, Point};
use crate::graph::{Drawing, Instance, Path, V};

/// A named graph fragment with local coordinates and its own pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gadget {
    pub points: Vec<Point>,
    pub edges: Vec<(V, V)>,
    pub names: Vec<String>,
    pub labels: BTreeMap<String, V>,
    pub ports: BTreeMap<String, V>,
    pub internal_pairs: Vec<(V, V)>,
}

impl Gadget {
    pub fn new() -> Gadget {
        Gadget::default()
    }

    /// Adds a vertex at integer position `(x, y)`. Panics on a duplicate
    /// name.
    pub fn add_vertex(&mut self, name: impl Into<String>, x: i64, y: i64) -> V {
        self.add_point(name, Point::new(x, y))
    }

    pub fn add_point(&mut self, name: impl Into<String>, p: Point) -> V {
        let name = name.into();
        let v = self.points.len();
        assert!(self.labels.insert(name.clone(), v).is_none(), "duplicate vertex name {name}");
        self.points.push(p);
        self.names.push(name);
        v
    }

    pub fn add_edge(&mut self, a: &str, b: &str) {
        let e = (self.v(a), self.v(b));
        self.edges.push(e);
    }

    pub fn add_pair(&mut self, s: &str, t: &str) {
        let p = (self.v(s), self.v(t));
        self.internal_pairs.push(p);
    }

    pub fn add_port(&mut self, name: &str) {
        let v = self.v(name);
        self.ports.insert(name.to_string(), v);
    }

    /// Vertex index by name. Panics when absent.
    pub fn v(&self, name: &str) -> V {
        match self.labels.get(name) {
            Some(&v) => v,
            None => panic!("no vertex named {name}"),
        }
    }

    pub fn get(&self, name: &str) -> Option<V> {
        self.labels.get(name).copied()
    }

    pub fn name(&self, v: V) -> &str {
        &self.names[v]
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        let e = (self.v(a), self.v(b));
        self.edges.contains(&e)
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) -> bool {
        let e = (self.v(a), self.v(b));
        let before = self.edges.len();
        self.edges.retain(|&x| x != e);
        before != self.edges.len()
    }

    /// Copies `other` shifted by `(dx, dy)`, prefixing its names with
    /// `prefix.`. Internal pairs come along; ports do not.
    pub fn embed(&mut self, prefix: &str, other: &Gadget, dx: i64, dy: i64) {
        let base = self.points.len();
        for (name, p) in other.names.iter().zip(&other.points) {
            let q = Point::from_coords(&p.x + int(dx), &p.y + int(dy));
            self.add_point(format!("{prefix}.{name}"), q);
        }
        self.edges.extend(other.edges.iter().map(|&(u, v)| (u + base, v + base)));
        self.internal_pairs.extend(other.internal_pairs.iter().map(|&(s, t)| (s + base, t + base)));
    }

    /// The fragment as an upward drawing; ids equal indices.
    pub fn drawing(&self) -> Drawing {
        let pts = self.points.iter().map(|p| Point::from_coords(-p.y.clone(), p.x.clone())).collect();
        Drawing::from_points(pts, self.edges.clone())
    }

    /// Instance with the internal pairs followed by `extra` pairs.
    pub fn instance(&self, extra: &[(&str, &str)]) -> Instance {
        let mut pairs = self.internal_pairs.clone();
        pairs.extend(extra.iter().map(|&(s, t)| (self.v(s), self.v(t))));
        Instance::new(self.drawing(), pairs)
    }

    /// Instance with `extra` pairs first, then the internal pairs.
    pub fn instance_extra_first(&self, extra: &[(&str, &str)]) -> Instance {
        let mut pairs: Vec<(V, V)> = extra.iter().map(|&(s, t)| (self.v(s), self.v(t))).collect();
        pairs.extend(self.internal_pairs.iter().copied());
        Instance::new(self.drawing(), pairs)
    }

    /// Names along a path with routing-box internals collapsed to the box
    /// name and bend vertices dropped.
    pub fn label_path(&self, path: &Path) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for &v in &path.vertices {
            let Some(label) = collapse_label(&self.names[v]) else { continue };
            if out.last() != Some(&label) {
                out.push(label);
            }
        }
        out
    }

    /// [`Gadget::label_path`] joined with `->`.
    pub fn label_string(&self, path: &Path) -> String {
        self.label_path(path).join("->")
    }
}

const BENDS: [&str; 6] = ["ep", "k12", "k23a", "k23b", "k6", "k612"];

fn is_box(seg: &str) -> bool {
    seg.len() == 2 && seg.starts_with('b') && seg.as_bytes()[1].is_ascii_digit()
}

fn collapse_label(name: &str) -> Option<String> {
    let segs: Vec<&str> = name.split('.').collect();
    if let Some(i) = segs.iter().position(|s| is_box(s)) {
        if i + 1 < segs.len() {
            return Some(segs[..=i].join("."));
        }
    }
    if BENDS.contains(segs.last().unwrap()) {
        return None;
    }
    Some(name.to_string())
}

/// Routing gadget vertices in local coordinates (flow along +x). `1_`
/// stands for the underlined target of `1`; `r1`..`r9` are the unnamed
/// internal vertices.
const ROUTING_VERTICES: [(&str, i64, i64); 21] = [
    ("1", -3, 3),
    ("4", -3, -3),
    ("2", -1, 2),
    ("3", -1, -2),
    ("r1", -2, 1),
    ("r2", -2, 0),
    ("r3", 0, 3),
    ("r4", 0, 1),
    ("r5", 0, 0),
    ("r6", 0, -1),
    ("r7", 0, -3),
    ("1_", 1, 2),
    ("4_", 1, -2),
    ("2_", 3, 3),
    ("3_", 3, -3),
    ("r8", 2, 0),
    ("r9", 2, -1),
    ("et", -4, 4),
    ("el", -4, 0),
    ("er", 4, 0),
    ("eb", 4, -4),
];

const ROUTING_EDGES: [(&str, &str); 28] = [
    ("et", "r1"),
    ("el", "r2"),
    ("r1", "r5"),
    ("1", "r1"),
    ("r1", "r4"),
    ("r2", "r6"),
    ("r2", "r5"),
    ("4", "r2"),
    ("4", "r7"),
    ("1", "r3"),
    ("2", "r3"),
    ("2", "r4"),
    ("3", "r6"),
    ("3", "r7"),
    ("r3", "1_"),
    ("r3", "2_"),
    ("r4", "1_"),
    ("r4", "r8"),
    ("r5", "r8"),
    ("r5", "r9"),
    ("r6", "r9"),
    ("r6", "4_"),
    ("r7", "4_"),
    ("r7", "3_"),
    ("r8", "2_"),
    ("r8", "er"),
    ("r9", "3_"),
    ("r9", "eb"),
];

/// The routing gadget: eight terminals, nine internal vertices and the four
/// boundary stubs `et`, `el` (in) and `er`, `eb` (out). Pairs are
/// `(i, i_)` for `i` in 1..=4.
pub fn build_routing_gadget() -> Gadget {
    let mut g = Gadget::new();
    for (name, x, y) in ROUTING_VERTICES {
        g.add_vertex(name, x, y);
    }
    for (a, b) in ROUTING_EDGES {
        g.add_edge(a, b);
    }
    for i in 1..=4 {
        g.add_pair(&i.to_string(), &format!("{i}_"));
    }
    for p in ["et", "el", "er", "eb"] {
        g.add_port(p);
    }
    g
}

/// Which literal edge of a crossing gadget to delete.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Drop {
    #[default]
    None,
    EPlus,
    EMinus,
}

/// Endpoints of the `e+` edge (the first hop of the top route to `b4`).
pub const E_PLUS: (&str, &str) = ("m1", "ep");
/// Endpoints of the `e-` edge (into `b1` from above).
pub const E_MINUS: (&str, &str) = ("m1", "b1.et");

/// Crossing gadget vertices, in tenths of a layout unit.
const CROSSING_VERTICES: [(&str, i64, i64); 29] = [
    ("T", 0, 40),
    ("m1", 10, 30),
    ("Hin", 0, 20),
    ("Lin", 0, -20),
    ("m2", 40, 20),
    ("X", 35, 0),
    ("k12", 32, -10),
    ("m3", 65, -20),
    ("m4", 52, 20),
    ("k23a", 58, -10),
    ("k23b", 62, 10),
    ("ep", 75, 30),
    ("m5", 75, -20),
    ("W", 80, 0),
    ("m0", 95, 0),
    ("m6", 100, -20),
    ("m7", 105, 20),
    ("Z", 100, 5),
    ("m8", 125, -20),
    ("m9", 120, 20),
    ("m10", 140, -20),
    ("Y", 145, 0),
    ("k6", 150, 10),
    ("m11", 155, -20),
    ("m12", 160, -30),
    ("k612", 105, -30),
    ("B", 170, -40),
    ("Hout", 170, 20),
    ("Lout", 170, -20),
];

const BOX_CENTERS: [(&str, i64, i64); 6] =
    [("b1", 25, 20), ("b2", 50, -10), ("b3", 70, 10), ("b4", 85, 20), ("b5", 115, -10), ("b6", 135, 10)];

const CROSSING_EDGES: [(&str, &str); 46] = [
    ("Hin", "b1.el"),
    ("Lin", "m3"),
    ("T", "m1"),
    ("m1", "b1.et"),
    ("m1", "ep"),
    ("ep", "b4.et"),
    ("b1.er", "m2"),
    ("b1.eb", "k12"),
    ("k12", "b2.el"),
    ("m2", "m4"),
    ("X", "m2"),
    ("X", "b2.et"),
    ("b2.eb", "m3"),
    ("b2.er", "k23a"),
    ("k23a", "k23b"),
    ("k23b", "b3.el"),
    ("m3", "m5"),
    ("m4", "b3.et"),
    ("m4", "b4.el"),
    ("b3.eb", "W"),
    ("b3.er", "m0"),
    ("m5", "W"),
    ("m5", "m6"),
    ("b4.eb", "m0"),
    ("b4.er", "m7"),
    ("m0", "m6"),
    ("m0", "b5.el"),
    ("m6", "m8"),
    ("m6", "k612"),
    ("k612", "m12"),
    ("m7", "m9"),
    ("Z", "m7"),
    ("Z", "b5.et"),
    ("b5.er", "b6.el"),
    ("b5.eb", "m8"),
    ("m8", "m10"),
    ("m9", "Hout"),
    ("m9", "b6.et"),
    ("b6.er", "k6"),
    ("k6", "m11"),
    ("b6.eb", "Y"),
    ("m10", "Y"),
    ("m10", "m11"),
    ("m11", "m12"),
    ("m11", "Lout"),
    ("m12", "B"),
];

/// Width and height of a crossing gadget in layout units.
pub const CROSSING_WIDTH: i64 = 170;
pub const CROSSING_HEIGHT: i64 = 80;

/// The crossing gadget with its six routing boxes expanded. Pairs are
/// `(X, Y)` followed by the 24 box pairs. Ports: `Hin`, `Lin`, `T` in;
/// `Hout`, `Lout`, `B` out.
pub fn build_crossing_gadget(drop: Drop) -> Gadget {
    let mut g = Gadget::new();
    for (name, x, y) in CROSSING_VERTICES {
        g.add_vertex(name, x, y);
    }
    let routing = build_routing_gadget();
    g.add_pair("X", "Y");
    for (b, cx, cy) in BOX_CENTERS {
        g.embed(b, &routing, cx, cy);
    }
    for (a, b) in CROSSING_EDGES {
        g.add_edge(a, b);
    }
    match drop {
        Drop::None => {}
        Drop::EPlus => {
            g.remove_edge(E_PLUS.0, E_PLUS.1);
        }
        Drop::EMinus => {
            g.remove_edge(E_MINUS.0, E_MINUS.1);
        }
    }
    for p in ["Hin", "Lin", "T", "Hout", "Lout", "B"] {
        g.add_port(p);
    }
    g
}

/// Which entry the first path of a row uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Plus,
    Minus,
}

impl Entry {
    /// `Hin` for [`Entry::Plus`], `Lin` for [`Entry::Minus`].
    pub fn port(self) -> &'static str {
        match self {
            Entry::Plus => "Hin",
            Entry::Minus => "Lin",
        }
    }
}

/// Offset between consecutive gadgets along a row or column.
pub const CHAIN_STEP: i64 = 256;

/// Name of the `j`-th gadget (1-based) inside a row or column.
pub fn member(j: usize) -> String {
    format!("G{j}")
}

/// `s` crossing gadgets chained left to right via `Hout -> Hin` and
/// `Lout -> Lin`. Pairs: the first path `(Hin_1, W_1)` or `(Lin_1, W_1)`,
/// then `(X_j, Y_j)` for every gadget, `(Z_j, W_j+1)` for `j < s`, then
/// all box pairs.
pub fn build_row(s: usize, entry: Entry) -> Gadget {
    assert!(s >= 1);
    let mut g = Gadget::new();
    let cg = build_crossing_gadget(Drop::None);
    for j in 1..=s {
        let off = (j as i64 - 1) * CHAIN_STEP;
        g.embed(&member(j), &cg, off, 0);
    }
    let box_pairs = std::mem::take(&mut g.internal_pairs);
    for j in 1..s {
        let (a, b) = (member(j), member(j + 1));
        g.add_edge(&format!("{a}.Hout"), &format!("{b}.Hin"));
        g.add_edge(&format!("{a}.Lout"), &format!("{b}.Lin"));
    }
    g.add_pair(&format!("G1.{}", entry.port()), "G1.W");
    for j in 1..=s {
        g.add_pair(&format!("{}.X", member(j)), &format!("{}.Y", member(j)));
    }
    for j in 1..s {
        g.add_pair(&format!("{}.Z", member(j)), &format!("{}.W", member(j + 1)));
    }
    // drop the (X, Y) copies that came with each embedded gadget
    let xy: Vec<(V, V)> =
        (1..=s).map(|j| (g.v(&format!("{}.X", member(j))), g.v(&format!("{}.Y", member(j))))).collect();
    g.internal_pairs.extend(box_pairs.into_iter().filter(|p| !xy.contains(p)));
    g.add_port("G1.Hin");
    g.add_port("G1.Lin");
    g
}

/// `t` crossing gadgets chained top to bottom via `B_i -> T_i+1`. Gadget
/// `i` gets `drops[i]`. Pairs: the entry paths `(Hin_i, W_i)` or
/// `(Lin_i, W_i)` per `entries`, then `(X_i, Y_i)` for every gadget, then
/// `(T_1, B_t)`, then all box pairs.
pub fn build_column(t: usize, drops: &[Drop], entries: &[Entry]) -> Gadget {
    assert!(t >= 1 && drops.len() == t && entries.len() == t);
    let mut g = Gadget::new();
    for (i, &d) in drops.iter().enumerate() {
        let off = i as i64 * CHAIN_STEP;
        g.embed(&member(i + 1), &build_crossing_gadget(d), off, -off);
    }
    let inherited = std::mem::take(&mut g.internal_pairs);
    for i in 1..t {
        g.add_edge(&format!("{}.B", member(i)), &format!("{}.T", member(i + 1)));
    }
    for (i, e) in entries.iter().enumerate() {
        let m = member(i + 1);
        g.add_pair(&format!("{m}.{}", e.port()), &format!("{m}.W"));
    }
    let mut xy = Vec::new();
    for i in 1..=t {
        let m = member(i);
        g.add_pair(&format!("{m}.X"), &format!("{m}.Y"));
        xy.push(*g.internal_pairs.last().unwrap());
    }
    g.add_pair("G1.T", &format!("{}.B", member(t)));
    g.internal_pairs.extend(inherited.into_iter().filter(|p| !xy.contains(p)));
    g.add_port("G1.T");
    g.add_port(&format!("{}.B", member(t)));
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate, validate_drawing};

    #[test]
    fn routing_gadget_shape() {
        let g = build_routing_gadget();
        assert_eq!(g.points.len(), 21);
        assert_eq!(g.edges.len(), 28);
        assert_eq!(g.internal_pairs.len(), 4);
        assert!(validate(&g.instance(&[])).is_ok());
    }

    #[test]
    fn crossing_gadget_shape() {
        let g = build_crossing_gadget(Drop::None);
        assert_eq!(g.points.len(), 29 + 6 * 21);
        assert_eq!(g.internal_pairs.len(), 25);
        assert!(validate_drawing(&g.drawing()).is_ok());
        assert!(g.has_edge("m1", "ep") && g.has_edge("m1", "b1.et"));
    }

    #[test]
    fn drops_remove_one_edge() {
        let full = build_crossing_gadget(Drop::None);
        for (drop, (a, b)) in [(Drop::EPlus, E_PLUS), (Drop::EMinus, E_MINUS)] {
            let g = build_crossing_gadget(drop);
            assert_eq!(g.edges.len() + 1, full.edges.len());
            assert!(!g.has_edge(a, b));
            assert_eq!(g.points, full.points);
        }
    }

    #[test]
    fn labels_collapse_boxes_and_bends() {
        let g = build_crossing_gadget(Drop::None);
        let names = ["T", "m1", "ep", "b4.et", "b4.r1", "b4.r5", "b4.r9", "b4.eb", "m0"];
        let p = Path::new(names.iter().map(|n| g.v(n)).collect());
        assert_eq!(g.label_string(&p), "T->m1->b4->m0");
    }

    #[test]
    fn composites_validate() {
        for s in 1..=3 {
            for e in [Entry::Plus, Entry::Minus] {
                let r = build_row(s, e);
                assert!(validate(&r.instance(&[])).is_ok(), "row {s}");
            }
        }
        let c = build_column(2, &[Drop::None, Drop::EMinus], &[Entry::Plus, Entry::Minus]);
        assert!(validate(&c.instance(&[])).is_ok());
    }

    #[test]
    fn row_pair_counts() {
        let r = build_row(2, Entry::Plus);
        // entry + 2 (X, Y) + 1 (Z, W) + 48 box pairs
        assert_eq!(r.internal_pairs.len(), 1 + 2 + 1 + 48);
        let c = build_column(2, &[Drop::None; 2], &[Entry::Plus, Entry::Minus]);
        assert_eq!(c.internal_pairs.len(), 2 + 2 + 1 + 48);
    }
}
