//! Line-oriented instance text format.
//!
//! ```text
//! # comment
//! v <id> <x> <y>     vertex; coordinates are `int` or `int/int`
//! e <u> <v>          directed edge u -> v
//! p <s> <t>          terminal pair, indexed by occurrence
//! ```
//!
//! Path lists, as printed by the solver, use one `path <i>: <id> <id> ...`
//! line per path with `i` counting from 0.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::geometry::{Point, Rational};
use crate::graph::{Drawing, GraphError, Instance, Path, PathSet, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: undeclared vertex {id}")]
    UndeclaredVertex { line: usize, id: VertexId },
    #[error("line {line}: vertex {id} declared twice")]
    DuplicateVertex { line: usize, id: VertexId },
    #[error("line {line}: edge {from} -> {to} listed twice")]
    DuplicateEdge { line: usize, from: VertexId, to: VertexId },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Parses `int` or `int/int` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
    }
}

fn parse_id(tok: &str, line: usize) -> Result<VertexId, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("bad vertex id `{tok}`")))
}

/// Parses an instance. Zero pairs are accepted here; the instance validator
/// reports them.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut vertices = Vec::new();
    let mut declared = std::collections::HashSet::new();
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["v", id, x, y] => {
                let id = parse_id(id, line)?;
                let x = parse_rational(x).ok_or_else(|| syntax(line, format!("bad coordinate `{x}`")))?;
                let y = parse_rational(y).ok_or_else(|| syntax(line, format!("bad coordinate `{y}`")))?;
                if !declared.insert(id) {
                    return Err(ParseError::DuplicateVertex { line, id });
                }
                vertices.push((id, Point::from_coords(x, y)));
            }
            ["e", u, v] => {
                let (u, v) = (parse_id(u, line)?, parse_id(v, line)?);
                for id in [u, v] {
                    if !declared.contains(&id) {
                        return Err(ParseError::UndeclaredVertex { line, id });
                    }
                }
                edges.push((u, v));
                edge_lines.push(line);
            }
            ["p", s, t] => {
                let (s, t) = (parse_id(s, line)?, parse_id(t, line)?);
                for id in [s, t] {
                    if !declared.contains(&id) {
                        return Err(ParseError::UndeclaredVertex { line, id });
                    }
                }
                pairs.push((s, t));
            }
            [kind, ..] if ["v", "e", "p"].contains(kind) => {
                return Err(syntax(line, format!("wrong number of fields for `{kind}`")));
            }
            [kind, ..] => return Err(syntax(line, format!("unknown record `{kind}`"))),
        }
    }
    let drawing = Drawing::new(vertices, edges.clone()).map_err(|e| match e {
        GraphError::DuplicateEdge(from, to) => {
            let pos = edges.iter().rposition(|&x| x == (from, to)).unwrap_or(0);
            ParseError::DuplicateEdge { line: edge_lines[pos], from, to }
        }
        other => syntax(0, other.to_string()),
    })?;
    let pairs = pairs.into_iter().map(|(s, t)| (drawing.index_of(s).unwrap(), drawing.index_of(t).unwrap())).collect();
    Ok(Instance::new(drawing, pairs))
}

/// Canonical text: vertices by id, edges by `(u, v)` id, pairs in index
/// order (pair order carries meaning, so it is kept).
pub fn serialize_instance(inst: &Instance) -> String {
    let d = &inst.drawing;
    let mut out = String::new();
    let mut vs: Vec<usize> = (0..d.vertex_count()).collect();
    vs.sort_by_key(|&v| d.id(v));
    for v in vs {
        let p = d.point(v);
        let _ = writeln!(out, "v {} {} {}", d.id(v), p.x, p.y);
    }
    let mut es: Vec<(VertexId, VertexId)> = d.edges().iter().map(|&(u, v)| (d.id(u), d.id(v))).collect();
    es.sort_unstable();
    for (u, v) in es {
        let _ = writeln!(out, "e {u} {v}");
    }
    for &(s, t) in &inst.pairs {
        let _ = writeln!(out, "p {} {}", d.id(s), d.id(t));
    }
    out
}

/// One `path <i>: ids` line per path.
pub fn format_paths(d: &Drawing, ps: &PathSet) -> String {
    let mut out = String::new();
    for (i, p) in ps.paths.iter().enumerate() {
        let ids: Vec<String> = p.vertices.iter().map(|&v| d.id(v).to_string()).collect();
        let _ = writeln!(out, "path {i}: {}", ids.join(" "));
    }
    out
}

/// Reads a path list written by [`format_paths`]. Indices must run 0, 1, ...
/// in order; `#` starts a comment.
pub fn parse_paths(text: &str, d: &Drawing) -> Result<PathSet, ParseError> {
    let mut paths = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content.split_once(':').ok_or_else(|| syntax(line, "expected `path <i>: ids`"))?;
        let idx = head
            .strip_prefix("path")
            .and_then(|n| n.trim().parse::<usize>().ok())
            .ok_or_else(|| syntax(line, format!("bad path header `{head}`")))?;
        if idx != paths.len() {
            return Err(syntax(line, format!("expected path {}, found path {idx}", paths.len())));
        }
        let mut vs = Vec::new();
        for tok in rest.split_whitespace() {
            let id = parse_id(tok, line)?;
            vs.push(d.index_of(id).ok_or(ParseError::UndeclaredVertex { line, id })?);
        }
        paths.push(Path::new(vs));
    }
    Ok(PathSet::new(paths))
}
