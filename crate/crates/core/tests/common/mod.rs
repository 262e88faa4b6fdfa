//! Instance generators shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use updp::geometry::{ratio, Point};
use updp::graph::{validate_drawing, Drawing, Instance, Path, PathSet, V};
use updp::rightmost::reachable_from;

/// Builds a drawing greedily: candidate upward edges in random order, each
/// kept with probability `p` when the drawing stays valid.
pub fn drawing_from_points<R: Rng>(rng: &mut R, points: Vec<Point>, p: f64) -> Drawing {
    let n = points.len();
    let mut cand: Vec<(V, V)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if points[u].y < points[v].y {
                cand.push((u, v));
            }
        }
    }
    cand.shuffle(rng);
    let mut edges = Vec::new();
    for e in cand {
        if !rng.gen_bool(p) {
            continue;
        }
        edges.push(e);
        if !validate_drawing(&Drawing::from_points(points.clone(), edges.clone())).is_ok() {
            edges.pop();
        }
    }
    Drawing::from_points(points, edges)
}

/// `n` distinct points on a `grid x grid` lattice; one in three points
/// gets a denominator of 2 or 3.
pub fn random_points<R: Rng>(rng: &mut R, n: usize, grid: i64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let den = if rng.gen_ratio(1, 3) { rng.gen_range(2..=3) } else { 1 };
        let p = Point::from_coords(ratio(rng.gen_range(0..grid * den), den), ratio(rng.gen_range(0..grid * den), den));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

pub fn random_drawing<R: Rng>(rng: &mut R, max_n: usize) -> Drawing {
    let n = rng.gen_range(2..=max_n);
    let pts = random_points(rng, n, 5);
    let p = rng.gen_range(0.3..0.9);
    drawing_from_points(rng, pts, p)
}

/// Up to `k` pairs with pairwise distinct terminals. Most pairs are
/// reachable; some are random.
pub fn random_pairs<R: Rng>(rng: &mut R, d: &Drawing, k: usize) -> Vec<(V, V)> {
    let n = d.vertex_count();
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    for _ in 0..k * 8 {
        if pairs.len() == k {
            break;
        }
        let s = rng.gen_range(0..n);
        if used[s] {
            continue;
        }
        let t = if rng.gen_bool(0.8) {
            let reach: Vec<V> = reachable_from(d, s).into_iter().filter(|&t| t != s && !used[t]).collect();
            match reach.choose(rng) {
                Some(&t) => t,
                None => continue,
            }
        } else {
            rng.gen_range(0..n)
        };
        if t == s || used[t] {
            continue;
        }
        used[s] = true;
        used[t] = true;
        pairs.push((s, t));
    }
    pairs
}

/// A random instance with 1..=3 pairs on at most `max_n` vertices.
pub fn random_instance<R: Rng>(rng: &mut R, max_n: usize) -> Instance {
    loop {
        let d = random_drawing(rng, max_n);
        let k = rng.gen_range(1..=3);
        let pairs = random_pairs(rng, &d, k);
        if !pairs.is_empty() {
            return Instance::new(d, pairs);
        }
    }
}

/// Random walks along edges avoiding each other, until `count` paths or no
/// free start is left.
pub fn random_disjoint_paths<R: Rng>(rng: &mut R, d: &Drawing, count: usize) -> PathSet {
    let n = d.vertex_count();
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    let mut order: Vec<V> = (0..n).collect();
    order.shuffle(rng);
    for s in order {
        if paths.len() == count {
            break;
        }
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut p = vec![s];
        loop {
            let next: Vec<V> = d.out_neighbors(*p.last().unwrap()).iter().copied().filter(|&v| !used[v]).collect();
            let Some(&v) = next.choose(rng) else { break };
            if rng.gen_ratio(1, 5) {
                break;
            }
            used[v] = true;
            p.push(v);
        }
        paths.push(Path::new(p));
    }
    PathSet::new(paths)
}

/// Every valid drawing with vertex `i` at height `i` and x in `0..width`,
/// over every subset of upward edges.
pub fn exhaustive_drawings(n: usize, width: i64) -> Vec<Drawing> {
    let mut out = Vec::new();
    let cand: Vec<(V, V)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let placements = (width as usize).pow(n as u32);
    for code in 0..placements {
        let mut c = code;
        let pts: Vec<Point> = (0..n)
            .map(|i| {
                let x = (c % width as usize) as i64;
                c /= width as usize;
                Point::new(x, i as i64)
            })
            .collect();
        for mask in 0u32..1 << cand.len() {
            let edges: Vec<(V, V)> = (0..cand.len()).filter(|b| mask >> b & 1 == 1).map(|b| cand[b]).collect();
            let d = Drawing::from_points(pts.clone(), edges);
            if validate_drawing(&d).is_ok() {
                out.push(d);
            }
        }
    }
    out
}

/// Every set of at most `k` pairs with distinct terminals, each pair
/// reachable, as lists in ascending order.
pub fn all_reachable_pair_sets(d: &Drawing, k: usize) -> Vec<Vec<(V, V)>> {
    let n = d.vertex_count();
    let mut single = Vec::new();
    for s in 0..n {
        for t in reachable_from(d, s) {
            if t != s {
                single.push((s, t));
            }
        }
    }
    single.sort_unstable();
    let mut out: Vec<Vec<(V, V)>> = Vec::new();
    fn grow(single: &[(V, V)], from: usize, cur: &mut Vec<(V, V)>, k: usize, out: &mut Vec<Vec<(V, V)>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in from..single.len() {
            let (s, t) = single[i];
            if cur.iter().any(|&(a, b)| [a, b].contains(&s) || [a, b].contains(&t)) {
                continue;
            }
            cur.push((s, t));
            grow(single, i + 1, cur, k, out);
            cur.pop();
        }
    }
    grow(&single, 0, &mut Vec::new(), k, &mut out);
    out
}

/// `k` sources funnel through one hub vertex into `k` targets; every pair
/// is reachable but at most one can be routed. About `n` vertices in all.
pub fn bottleneck_instance(k: usize, n: usize) -> Instance {
    let arm = ((n - 1) / (2 * k)).max(1) as i64;
    let mut pts = vec![Point::new(0, 0)];
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    let spread = |i: usize| 2 * i as i64 - (k as i64 - 1);
    for i in 0..k {
        // arm from (spread, -arm) up to the hub, and from the hub up to
        // (spread, arm); one vertex per unit of height
        let dx = spread(i);
        let mut prev = None;
        let mut first = 0;
        for h in (1..=arm).rev() {
            let v = pts.len();
            pts.push(Point::from_coords(ratio(dx * h, arm), ratio(-h, 1)));
            match prev {
                None => first = v,
                Some(p) => edges.push((p, v)),
            }
            prev = Some(v);
        }
        edges.push((prev.unwrap(), 0));
        let mut prev = 0;
        for h in 1..=arm {
            let v = pts.len();
            pts.push(Point::from_coords(ratio(dx * h, arm), ratio(h, 1)));
            edges.push((prev, v));
            prev = v;
        }
        pairs.push((first, prev));
    }
    Instance::new(Drawing::from_points(pts, edges), pairs)
}
