//! Graphviz output for drawings, solutions and path orders.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::geometry::Rational;
use crate::graph::{Drawing, PathSet, V};
use crate::order::Closure;

const PALETTE: [&str; 8] = ["red", "blue", "forestgreen", "darkorange", "purple", "brown", "deeppink", "cyan4"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The drawing as a DOT digraph. Vertices with equal y share a rank, and
/// ranks go bottom to top. Each vertex carries its exact coordinates in a
/// `label`; edges of `solution` path `i` get colour `i` of a fixed palette
/// and a `path` attribute.
pub fn drawing_to_dot(d: &Drawing, solution: Option<&PathSet>) -> String {
    let mut on_path: HashMap<(V, V), usize> = HashMap::new();
    if let Some(ps) = solution {
        for (i, p) in ps.paths.iter().enumerate() {
            for w in p.vertices.windows(2) {
                on_path.insert((w[0], w[1]), i);
            }
        }
    }
    let mut s = String::from("digraph drawing {\n  rankdir=BT;\n  node [shape=circle];\n");
    for v in 0..d.vertex_count() {
        let p = d.point(v);
        writeln!(s, "  {} [label={}];", d.id(v), quote(&format!("{}\n({}, {})", d.id(v), p.x, p.y))).unwrap();
    }
    let mut ranks: BTreeMap<&Rational, Vec<V>> = BTreeMap::new();
    for v in 0..d.vertex_count() {
        ranks.entry(&d.point(v).y).or_default().push(v);
    }
    for vs in ranks.values().filter(|vs| vs.len() > 1) {
        let ids: Vec<String> = vs.iter().map(|&v| d.id(v).to_string()).collect();
        writeln!(s, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
    }
    for &(u, v) in d.edges() {
        match on_path.get(&(u, v)) {
            Some(&i) => writeln!(
                s,
                "  {} -> {} [color={}, penwidth=2, path={i}];",
                d.id(u),
                d.id(v),
                PALETTE[i % PALETTE.len()]
            )
            .unwrap(),
            None => writeln!(s, "  {} -> {};", d.id(u), d.id(v)).unwrap(),
        }
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram of `≺*`: one node per path, an edge `i -> j` per cover.
pub fn hasse_to_dot(closure: &Closure, ps: &PathSet, d: &Drawing) -> String {
    let mut s = String::from("digraph order {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, p) in ps.paths.iter().enumerate() {
        let label =
            if p.is_empty() { format!("P{i}") } else { format!("P{i}: {} -> {}", d.id(p.source()), d.id(p.target())) };
        writeln!(s, "  p{i} [label={}];", quote(&label)).unwrap();
    }
    for (i, j) in closure.covers() {
        writeln!(s, "  p{i} -> p{j};").unwrap();
    }
    s.push_str("}\n");
    s
}
