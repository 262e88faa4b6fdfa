//! The "lies to the right of" relation between disjoint paths and its
//! transitive closure.
//!
//! `q ≺ p` holds when some point of `p` lies strictly right of `q` at a
//! height inside `q`'s closed y-range. Between two consecutive vertex
//! heights both polylines are linear, so their left/right order can only
//! change at a crossing. Sampling every vertex height in the common range
//! plus the midpoints between them is therefore exact.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::geometry::{midpoint, x_at, Point, Rational};
use crate::graph::{Drawing, Path, PathSet};

/// Heights at which the horizontal order of two y-monotone polylines must be
/// sampled: all vertex heights inside the common y-range, plus midpoints.
pub fn critical_heights(a: &[Point], b: &[Point]) -> Vec<Rational> {
    let (Some(a0), Some(a1), Some(b0), Some(b1)) = (a.first(), a.last(), b.first(), b.last()) else {
        return Vec::new();
    };
    let lo = std::cmp::max(&a0.y, &b0.y);
    let hi = std::cmp::min(&a1.y, &b1.y);
    if lo > hi {
        return Vec::new();
    }
    let mut ys: Vec<Rational> = a.iter().chain(b).map(|p| &p.y).filter(|y| *y >= lo && *y <= hi).cloned().collect();
    ys.push(lo.clone());
    ys.push(hi.clone());
    ys.sort();
    ys.dedup();
    let mids: Vec<Rational> = ys.windows(2).map(|w| midpoint(&w[0], &w[1])).collect();
    ys.extend(mids);
    ys.sort();
    ys
}

fn any_height(q: &[Point], p: &[Point], want: Ordering) -> bool {
    critical_heights(q, p).iter().any(|y| match (x_at(p, y), x_at(q, y)) {
        (Some(xp), Some(xq)) => xp.cmp(&xq) == want,
        _ => false,
    })
}

/// `q ≺ p` on raw polylines: `p` meets `Right(q)`.
pub fn precedes_polylines(q: &[Point], p: &[Point]) -> bool {
    any_height(q, p, Ordering::Greater)
}

/// Whether `p` meets `Left(q)`.
pub fn meets_left_polylines(q: &[Point], p: &[Point]) -> bool {
    any_height(q, p, Ordering::Less)
}

/// `q ≺ p`: some point of `p` lies in `Right(q)`.
pub fn precedes(q: &Path, p: &Path, d: &Drawing) -> bool {
    precedes_polylines(&d.polyline(q), &d.polyline(p))
}

/// A directed cycle of the relation, given as path indices; the first index
/// is repeated at the end.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("path order has a cycle: {cycle:?}")]
pub struct OrderCycle {
    pub cycle: Vec<usize>,
}

/// Transitive closure of `≺` over a path set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    n: usize,
    reach: Vec<Vec<bool>>,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `i ≺* j`.
    pub fn related(&self, i: usize, j: usize) -> bool {
        self.reach[i][j]
    }

    /// All related index pairs, ascending.
    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.reach[i][j] {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// Indices with no successor.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.reach[i].iter().any(|&r| r)).collect()
    }

    /// Cover relation of the closure (its Hasse diagram edges).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, j) in self.pairs() {
            if !(0..self.n).any(|m| self.reach[i][m] && self.reach[m][j]) {
                out.push((i, j));
            }
        }
        out
    }
}

/// Builds `≺*` from a direct relation matrix, or reports a cycle.
pub fn closure_of(direct: &[Vec<bool>]) -> Result<Closure, OrderCycle> {
    let n = direct.len();
    if let Some(cycle) = find_cycle(direct) {
        return Err(OrderCycle { cycle });
    }
    let mut reach = direct.to_vec();
    for m in 0..n {
        let via = reach[m].clone();
        for row in reach.iter_mut().filter(|row| row[m]) {
            for (r, &v) in row.iter_mut().zip(&via) {
                *r |= v;
            }
        }
    }
    Ok(Closure { n, reach })
}

fn find_cycle(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = adj.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        state[root] = 1;
        stack.push((root, 0));
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next == n {
                state[u] = 2;
                stack.pop();
                continue;
            }
            let v = *next;
            *next += 1;
            if !adj[u][v] {
                continue;
            }
            match state[v] {
                0 => {
                    state[v] = 1;
                    stack.push((v, 0));
                }
                1 => {
                    let start = stack.iter().position(|&(w, _)| w == v).unwrap();
                    let mut cycle: Vec<usize> = stack[start..].iter().map(|&(w, _)| w).collect();
                    cycle.push(v);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

/// Direct `≺` matrix of a path set: entry `[i][j]` is `paths[i] ≺ paths[j]`.
pub fn direct_relation(ps: &PathSet, d: &Drawing) -> Vec<Vec<bool>> {
    let polys: Vec<Vec<Point>> = ps.paths.iter().map(|p| d.polyline(p)).collect();
    (0..polys.len())
        .map(|i| (0..polys.len()).map(|j| i != j && precedes_polylines(&polys[i], &polys[j])).collect())
        .collect()
}

/// `≺*` over a pairwise disjoint path set.
pub fn order_closure(ps: &PathSet, d: &Drawing) -> Result<Closure, OrderCycle> {
    closure_of(&direct_relation(ps, d))
}

/// Indices of `≺*`-maximal paths.
pub fn maximal_elements(ps: &PathSet, d: &Drawing) -> Result<Vec<usize>, OrderCycle> {
    Ok(order_closure(ps, d)?.maximal())
}
