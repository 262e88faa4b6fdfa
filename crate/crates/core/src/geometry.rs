//! Exact predicates over straight-line drawings.
//!
//! Every predicate here is evaluated with exact arithmetic. Points carry
//! [`Rational`] coordinates by default; the same predicates are generic over
//! any ordered exact scalar (the drawing module also instantiates them with
//! `i128` on integer-scaled coordinates, which is exact as long as the scaled
//! coordinates stay below 2^62 in magnitude).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Exact rational number used for all coordinates.
pub type Rational = BigRational;

/// Builds an integer-valued [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Ordered exact scalar the predicates can run on.
pub trait Scalar: Clone + Ord + Signed {}

impl<T: Clone + Ord + Signed> Scalar for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T = Rational> {
    pub x: T,
    pub y: T,
}

impl Point<Rational> {
    /// Point with integer coordinates.
    pub fn new(x: i64, y: i64) -> Self {
        Point { x: int(x), y: int(y) }
    }
}

impl<T> Point<T> {
    pub fn from_coords(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A straight segment between two distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment<T = Rational> {
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T> Segment<T> {
    pub fn new(a: Point<T>, b: Point<T>) -> Self {
        Segment { a, b }
    }
}

impl<T: Scalar> Segment<T> {
    /// Whether the segment points strictly upward (`a.y < b.y`).
    pub fn is_upward(&self) -> bool {
        self.a.y < self.b.y
    }
}

/// Sign of the cross product `(b - a) x (c - a)`.
///
/// `Greater` means `c` lies to the left of the directed line `a -> b`
/// (a counterclockwise turn), `Less` means right, `Equal` means collinear.
pub fn orientation<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Ordering {
    let lhs = (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone());
    let rhs = (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone());
    lhs.cmp(&rhs)
}

/// Sign of the cross product of two direction vectors.
pub fn cross_sign<T: Scalar>(u: (&T, &T), v: (&T, &T)) -> Ordering {
    let lhs = u.0.clone() * v.1.clone();
    let rhs = u.1.clone() * v.0.clone();
    lhs.cmp(&rhs)
}

/// Compares two nonzero direction vectors by their counterclockwise angle
/// from the positive x-axis, measured in `[0, 2*pi)`.
pub fn compare_directions<T: Scalar>(u: (&T, &T), v: (&T, &T)) -> Ordering {
    fn half<T: Scalar>(d: (&T, &T)) -> u8 {
        let (dx, dy) = d;
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    }
    half(u)
        .cmp(&half(v))
        // u before v when v is counterclockwise from u
        .then_with(|| cross_sign(u, v).reverse())
}

fn between<T: Scalar>(lo: &T, v: &T, hi: &T) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    lo <= v && v <= hi
}

/// Whether `p` lies on segment `s` strictly between its endpoints.
pub fn point_in_segment_interior<T: Scalar>(p: &Point<T>, s: &Segment<T>) -> bool {
    if *p == s.a || *p == s.b {
        return false;
    }
    orientation(&s.a, &s.b, p) == Ordering::Equal && between(&s.a.x, &p.x, &s.b.x) && between(&s.a.y, &p.y, &s.b.y)
}

/// True iff the segments meet at a point interior to both, or overlap in
/// more than one point. Touching at a shared endpoint is not a crossing, and
/// neither is an endpoint of one segment resting on the other (use
/// [`point_in_segment_interior`] for that).
pub fn segments_properly_cross<T: Scalar>(s1: &Segment<T>, s2: &Segment<T>) -> bool {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);
    use Ordering::*;
    if o1 == Equal && o2 == Equal {
        // collinear: project on x unless the common line is vertical
        let key = |p: &Point<T>| {
            if s1.a.x != s1.b.x {
                p.x.clone()
            } else {
                p.y.clone()
            }
        };
        let (a1, b1) = (key(&s1.a), key(&s1.b));
        let (a2, b2) = (key(&s2.a), key(&s2.b));
        let lo = std::cmp::max(std::cmp::min(a1.clone(), b1.clone()), std::cmp::min(a2.clone(), b2.clone()));
        let hi = std::cmp::min(std::cmp::max(a1, b1), std::cmp::max(a2, b2));
        return lo < hi;
    }
    o1 != Equal && o2 != Equal && o1 != o2 && o3 != Equal && o4 != Equal && o3 != o4
}

/// All x-values where the horizontal line at height `y` meets `polyline`,
/// ascending and deduplicated. For a strictly y-monotone polyline the result
/// has at most one element.
pub fn horizontal_crossings(polyline: &[Point], y: &Rational) -> Vec<Rational> {
    let mut xs = Vec::new();
    match polyline {
        [] => {}
        [p] => {
            if &p.y == y {
                xs.push(p.x.clone());
            }
        }
        _ => {
            for w in polyline.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                if !between(&a.y, y, &b.y) {
                    continue;
                }
                if a.y == b.y {
                    xs.push(a.x.clone());
                    xs.push(b.x.clone());
                } else {
                    xs.push(interpolate_x(a, b, y));
                }
            }
        }
    }
    xs.sort();
    xs.dedup();
    xs
}

/// x-coordinate of the segment `a-b` at height `y` (requires `a.y != b.y`).
pub(crate) fn interpolate_x(a: &Point, b: &Point, y: &Rational) -> Rational {
    &a.x + (&b.x - &a.x) * (y - &a.y) / (&b.y - &a.y)
}

/// x-coordinate of a strictly y-increasing polyline at height `y`, or `None`
/// when `y` is outside its y-range.
pub fn x_at(path: &[Point], y: &Rational) -> Option<Rational> {
    let first = path.first()?;
    let last = path.last()?;
    if y < &first.y || y > &last.y {
        return None;
    }
    // first segment whose top reaches y
    let idx = path.partition_point(|p| &p.y < y);
    let hi = &path[idx];
    if &hi.y == y || idx == 0 {
        return Some(hi.x.clone());
    }
    Some(interpolate_x(&path[idx - 1], hi, y))
}

/// Position of a point relative to a strictly y-monotone path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
    On,
    OutOfRange,
}

/// Classifies `p` against `path`, whose vertices must be strictly increasing
/// in y. The y-range bounds are inclusive.
pub fn point_side(p: &Point, path: &[Point]) -> Side {
    match x_at(path, &p.y) {
        None => Side::OutOfRange,
        Some(x) => match x.cmp(&p.x) {
            Ordering::Less => Side::Right,
            Ordering::Greater => Side::Left,
            Ordering::Equal => Side::On,
        },
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Rational `1/2`, handy for half-open sampling.
pub fn half() -> Rational {
    Rational::one() / int(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(Point::new(a.0, a.1), Point::new(b.0, b.1))
    }

    #[test]
    fn crossings_of_diagonal() {
        let p = pts(&[(0, 0), (2, 2)]);
        assert_eq!(horizontal_crossings(&p, &int(1)), vec![int(1)]);
        assert!(horizontal_crossings(&p, &int(3)).is_empty());
    }

    #[test]
    fn crossings_interpolate_second_segment() {
        // (1,2)-(3,4) at y=3 gives x=2
        let p = pts(&[(0, 0), (1, 2), (3, 4)]);
        assert_eq!(horizontal_crossings(&p, &int(3)), vec![int(2)]);
        // at a shared vertex height the value is reported once
        assert_eq!(horizontal_crossings(&p, &int(2)), vec![int(1)]);
    }

    #[test]
    fn proper_crossing_cases() {
        assert!(segments_properly_cross(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))));
        assert!(!segments_properly_cross(&seg((0, 0), (1, 1)), &seg((1, 1), (2, 0))));
        assert!(segments_properly_cross(&seg((0, 0), (2, 2)), &seg((1, 1), (3, 3))));
        // collinear, touching only at an endpoint
        assert!(!segments_properly_cross(&seg((0, 0), (1, 1)), &seg((1, 1), (3, 3))));
        // vertical collinear overlap
        assert!(segments_properly_cross(&seg((0, 0), (0, 2)), &seg((0, 1), (0, 3))));
        // T-junction is not a proper crossing
        assert!(!segments_properly_cross(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 2))));
        assert!(point_in_segment_interior(&Point::new(1, 0), &seg((0, 0), (2, 0))));
        // disjoint parallel
        assert!(!segments_properly_cross(&seg((0, 0), (0, 2)), &seg((1, 0), (1, 2))));
    }

    #[test]
    fn collinear_overlap_matches_parametric_interval() {
        // oracle: parametrise s2 over s1's line and intersect [0,1] intervals
        let cases = [
            ((0, 0), (2, 2), (1, 1), (3, 3), true),
            ((0, 0), (2, 2), (2, 2), (3, 3), false),
            ((0, 0), (4, 2), (2, 1), (6, 3), true),
            ((0, 0), (4, 2), (6, 3), (8, 4), false),
            ((0, 0), (4, 2), (1, 0), (3, 1), false),
        ];
        for (a, b, c, d, expected) in cases {
            let s1 = seg(a, b);
            let s2 = seg(c, d);
            let dir = (int(b.0 - a.0), int(b.1 - a.1));
            let len2 = &dir.0 * &dir.0 + &dir.1 * &dir.1;
            let t = |p: (i64, i64)| (&dir.0 * int(p.0 - a.0) + &dir.1 * int(p.1 - a.1)) / &len2;
            let collinear = orientation(&s1.a, &s1.b, &s2.a) == Ordering::Equal
                && orientation(&s1.a, &s1.b, &s2.b) == Ordering::Equal;
            let (t0, t1) = (t(c), t(d));
            let lo = std::cmp::max(int(0), std::cmp::min(t0.clone(), t1.clone()));
            let hi = std::cmp::min(int(1), std::cmp::max(t0, t1));
            let oracle = collinear && lo < hi;
            assert_eq!(oracle, expected);
            assert_eq!(segments_properly_cross(&s1, &s2), expected);
        }
    }

    #[test]
    fn side_of_vertical_path() {
        let path = pts(&[(0, 0), (0, 2)]);
        assert_eq!(point_side(&Point::new(5, 1), &path), Side::Right);
        assert_eq!(point_side(&Point::new(0, 1), &path), Side::On);
        assert_eq!(point_side(&Point::new(-1, 0), &path), Side::Left);
        assert_eq!(point_side(&Point::new(-1, 3), &path), Side::OutOfRange);
    }

    #[test]
    fn side_of_single_point_path() {
        let path = pts(&[(0, 0)]);
        assert_eq!(point_side(&Point::new(1, 0), &path), Side::Right);
        assert_eq!(point_side(&Point::new(1, 1), &path), Side::OutOfRange);
    }

    #[test]
    fn direction_order() {
        let r = (int(1), int(1));
        let l = (int(-1), int(1));
        let up = (int(0), int(1));
        assert_eq!(compare_directions((&r.0, &r.1), (&l.0, &l.1)), Ordering::Less);
        assert_eq!(compare_directions((&up.0, &up.1), (&l.0, &l.1)), Ordering::Less);
        assert_eq!(compare_directions((&l.0, &l.1), (&r.0, &r.1)), Ordering::Greater);
        let down = (int(0), int(-1));
        assert_eq!(compare_directions((&l.0, &l.1), (&down.0, &down.1)), Ordering::Less);
    }

    #[test]
    fn integer_instantiation_agrees() {
        let a = Point::from_coords(0i128, 0);
        let b = Point::from_coords(2i128, 2);
        let c = Point::from_coords(0i128, 2);
        let d = Point::from_coords(2i128, 0);
        assert!(segments_properly_cross(&Segment::new(a, b), &Segment::new(c, d)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn monotone_path() -> impl Strategy<Value = Vec<Point>> {
            prop::collection::vec((-20i64..20, 1i64..5), 1..6).prop_map(|steps| {
                let mut y = 0;
                steps
                    .into_iter()
                    .map(|(x, dy)| {
                        y += dy;
                        Point::new(x, y)
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn sides_are_a_partition(path in monotone_path(), px in -30i64..30, py in -2i64..30, den in 1i64..4) {
                let p = Point::from_coords(ratio(px, den), ratio(py, den));
                let side = point_side(&p, &path);
                let xs = horizontal_crossings(&path, &p.y);
                prop_assert!(xs.len() <= 1);
                let expected = match xs.first() {
                    None => Side::OutOfRange,
                    Some(x) if x < &p.x => Side::Right,
                    Some(x) if x > &p.x => Side::Left,
                    Some(_) => Side::On,
                };
                prop_assert_eq!(side, expected);
            }

            #[test]
            fn side_is_translation_invariant(path in monotone_path(), px in -30i64..30, py in 0i64..30, dx in -50i64..50, dy in -50i64..50) {
                let p = Point::new(px, py);
                let moved: Vec<Point> = path.iter().map(|q| Point::from_coords(&q.x + int(dx), &q.y + int(dy))).collect();
                let mp = Point::from_coords(&p.x + int(dx), &p.y + int(dy));
                prop_assert_eq!(point_side(&p, &path), point_side(&mp, &moved));
            }
        }
    }
}
