//! Rightmost s-t paths in linear time.
//!
//! The walk starts at `s` and always takes the first out-edge (in
//! rightmost-first order) whose head can still reach `t`. Restricting the
//! walk to vertices that reach `t` is what keeps it from dead-ending.

use std::collections::BTreeSet;

use crate::graph::{Drawing, Path, V};

/// Vertices reachable from `s` by directed paths, `s` included.
pub fn reachable_from(d: &Drawing, s: V) -> BTreeSet<V> {
    let blocked = vec![false; d.vertex_count()];
    let mask = forward_mask(d, s, &blocked);
    (0..d.vertex_count()).filter(|&v| mask[v]).collect()
}

/// Forward reachability from `s` through unblocked vertices, as a mask.
/// A blocked `s` reaches nothing.
pub fn forward_mask(d: &Drawing, s: V, blocked: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; d.vertex_count()];
    if blocked[s] {
        return seen;
    }
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &v in d.out_neighbors(u) {
            if !seen[v] && !blocked[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Vertices inside `within` that reach `t` using only vertices of `within`.
pub fn backward_mask(d: &Drawing, t: V, within: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; d.vertex_count()];
    if !within[t] {
        return seen;
    }
    seen[t] = true;
    let mut stack = vec![t];
    while let Some(v) = stack.pop() {
        for &u in d.in_neighbors(v) {
            if !seen[u] && within[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

/// The out-neighbour of `v` inside `allowed` whose edge has the smallest
/// direction angle, if any.
pub fn rightmost_successor(d: &Drawing, v: V, allowed: &[bool]) -> Option<V> {
    d.out_neighbors(v).iter().copied().find(|&w| allowed[w])
}

/// The rightmost `s`-`t` path, or `None` when `t` is unreachable.
pub fn rightmost_path(d: &Drawing, s: V, t: V) -> Option<Path> {
    rightmost_path_avoiding(d, s, t, &vec![false; d.vertex_count()])
}

/// The rightmost `s`-`t` path in the drawing with `blocked` vertices
/// deleted.
pub fn rightmost_path_avoiding(d: &Drawing, s: V, t: V, blocked: &[bool]) -> Option<Path> {
    let u = forward_mask(d, s, blocked);
    if !u[t] {
        return None;
    }
    let u_prime = backward_mask(d, t, &u);
    let mut walk = vec![s];
    let mut v = s;
    while v != t {
        v = rightmost_successor(d, v, &u_prime).expect("every vertex of U' reaches t");
        walk.push(v);
    }
    Some(Path::new(walk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn d(points: &[(i64, i64)], edges: &[(V, V)]) -> Drawing {
        Drawing::from_points(points.iter().map(|&(x, y)| Point::new(x, y)).collect(), edges.to_vec())
    }

    fn diamond() -> Drawing {
        // s=0, a=1 (right), b=2 (left), t=3
        d(&[(0, 0), (1, 1), (-1, 1), (0, 2)], &[(0, 1), (0, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn reachability() {
        let single = d(&[(0, 0), (0, 1)], &[(0, 1)]);
        assert_eq!(reachable_from(&single, 0), BTreeSet::from([0, 1]));
        let isolated = d(&[(0, 0)], &[]);
        assert_eq!(reachable_from(&isolated, 0), BTreeSet::from([0]));
        assert_eq!(reachable_from(&diamond(), 0), BTreeSet::from([0, 1, 2, 3]));
    }

    #[test]
    fn successor_choice() {
        let dr = d(&[(0, 0), (1, 1), (-1, 1)], &[(0, 1), (0, 2)]);
        assert_eq!(rightmost_successor(&dr, 0, &[true, true, true]), Some(1));
        assert_eq!(rightmost_successor(&dr, 0, &[true, false, true]), Some(2));
        assert_eq!(rightmost_successor(&dr, 1, &[true, true, true]), None);
    }

    #[test]
    fn paths() {
        let single = d(&[(0, 0), (0, 1)], &[(0, 1)]);
        assert_eq!(rightmost_path(&single, 0, 1), Some(Path::new(vec![0, 1])));
        assert_eq!(rightmost_path(&diamond(), 0, 3), Some(Path::new(vec![0, 1, 3])));
        assert_eq!(rightmost_path(&single, 1, 0), None);
    }

    #[test]
    fn walk_avoids_dead_ends() {
        // the right branch 0->1 leads nowhere near t
        let dr = d(&[(0, 0), (2, 1), (-1, 1), (0, 2)], &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(rightmost_path(&dr, 0, 3), Some(Path::new(vec![0, 2, 3])));
    }

    #[test]
    fn blocked_vertices_are_avoided() {
        let mut blocked = vec![false; 4];
        blocked[1] = true;
        assert_eq!(rightmost_path_avoiding(&diamond(), 0, 3, &blocked), Some(Path::new(vec![0, 2, 3])));
        blocked[2] = true;
        assert_eq!(rightmost_path_avoiding(&diamond(), 0, 3, &blocked), None);
    }
}
