use super::{Rat, Scalar};

/// Exact point with a cached floating approximation for filtering.
#[derive(Clone, Debug)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
    fx: f64,
    fy: f64,
    /// Absolute error bound of `fx` and `fy`.
    err: f64,
}

impl<S: PartialEq> PartialEq for Point<S> {
    fn eq(&self, o: &Self) -> bool {
        self.x == o.x && self.y == o.y
    }
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        let (fx, ex) = x.approx();
        let (fy, ey) = y.approx();
        Point { x, y, fx, fy, err: ex.max(ey) }
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.fx, self.fy)
    }

    pub fn approx_error(&self) -> f64 {
        self.err
    }

    pub fn sub(&self, o: &Self) -> (S, S) {
        (self.x.minus(&o.x), self.y.minus(&o.y))
    }

    /// `self + t (o - self)`.
    pub fn lerp(&self, o: &Self, t: &Rat) -> Self {
        let t = self.x.from_rat_like(t);
        let (dx, dy) = o.sub(self);
        Point::new(self.x.plus(&t.times(&dx)), self.y.plus(&t.times(&dy)))
    }

    /// Lexicographic comparison by `(x, y)`.
    pub fn cmp_lex(&self, o: &Self) -> std::cmp::Ordering {
        self.x.cmp_exact(&o.x).then_with(|| self.y.cmp_exact(&o.y))
    }
}

pub fn cross<S: Scalar>(ax: &S, ay: &S, bx: &S, by: &S) -> S {
    ax.times(by).minus(&ay.times(bx))
}

pub fn dot<S: Scalar>(ax: &S, ay: &S, bx: &S, by: &S) -> S {
    ax.times(bx).plus(&ay.times(by))
}

/// Sign of `(q - p) × (r - p)`: +1 for a left turn (counterclockwise).
pub fn orientation<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> i8 {
    let (dx1, dy1) = (q.fx - p.fx, q.fy - p.fy);
    let (dx2, dy2) = (r.fx - p.fx, r.fy - p.fy);
    let a = dx1 * dy2;
    let b = dy1 * dx2;
    let det = a - b;
    let e = 2.0 * (p.err + q.err + r.err);
    let bound =
        e * (dx1.abs() + dy1.abs() + dx2.abs() + dy2.abs() + 2.0 * e) + 8.0 * f64::EPSILON * (a.abs() + b.abs());
    if det.is_finite() && bound.is_finite() && det.abs() > bound {
        return if det > 0.0 { 1 } else { -1 };
    }
    let (ux, uy) = q.sub(p);
    let (vx, vy) = r.sub(p);
    cross(&ux, &uy, &vx, &vy).sign()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Segment<S> {
    pub a: Point<S>,
    pub b: Point<S>,
}

impl<S: Scalar> Segment<S> {
    pub fn new(a: Point<S>, b: Point<S>) -> Self {
        debug_assert!(a != b, "degenerate segment");
        Segment { a, b }
    }

    /// True when `p` is on the closed segment.
    pub fn contains(&self, p: &Point<S>) -> bool {
        orientation(&self.a, &self.b, p) == 0 && between(&self.a, &self.b, p)
    }
}

/// For collinear `a, b, p`: `p` lies on the closed segment `ab`.
fn between<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> bool {
    let (dx, dy) = b.sub(a);
    let (px, py) = p.sub(a);
    let t = dot(&px, &py, &dx, &dy);
    let len = dot(&dx, &dy, &dx, &dy);
    t.sign() >= 0 && t.cmp_exact(&len) != std::cmp::Ordering::Greater
}

#[derive(Clone, Debug, PartialEq)]
pub enum SegmentRelation<S> {
    Disjoint,
    /// Interiors cross in a single point.
    ProperCross(Point<S>),
    /// A single common point that is an endpoint of at least one segment.
    EndpointTouch(Point<S>),
    /// Collinear with a common sub-segment of positive length.
    CollinearOverlap,
}

pub fn segment_relation<S: Scalar>(s1: &Segment<S>, s2: &Segment<S>) -> SegmentRelation<S> {
    let (a, b, c, d) = (&s1.a, &s1.b, &s2.a, &s2.b);
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 == 0 && o2 == 0 {
        // Collinear: compare projections onto the common line.
        let hits: Vec<&Point<S>> = [c, d]
            .into_iter()
            .filter(|p| between(a, b, p))
            .chain([a, b].into_iter().filter(|p| between(c, d, p)))
            .collect();
        let mut distinct: Vec<&Point<S>> = Vec::new();
        for p in hits {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        return match distinct.len() {
            0 => SegmentRelation::Disjoint,
            1 => SegmentRelation::EndpointTouch(distinct[0].clone()),
            _ => SegmentRelation::CollinearOverlap,
        };
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return SegmentRelation::Disjoint;
    }
    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        // t = ((c - a) × (d - c)) / ((b - a) × (d - c))
        let (rx, ry) = b.sub(a);
        let (sx, sy) = d.sub(c);
        let (wx, wy) = c.sub(a);
        let num = cross(&wx, &wy, &sx, &sy);
        let den = cross(&rx, &ry, &sx, &sy);
        let t = num.times(&den.inverse().expect("crossing segments are not parallel"));
        let p = Point::new(a.x.plus(&t.times(&rx)), a.y.plus(&t.times(&ry)));
        return SegmentRelation::ProperCross(p);
    }
    let p = if o1 == 0 {
        c
    } else if o2 == 0 {
        d
    } else if o3 == 0 {
        a
    } else {
        b
    };
    SegmentRelation::EndpointTouch(p.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskSide {
    Inside,
    On,
    Outside,
}

fn side(d2: &Rat, r2: &Rat) -> DiskSide {
    match d2.cmp(r2) {
        std::cmp::Ordering::Less => DiskSide::Inside,
        std::cmp::Ordering::Equal => DiskSide::On,
        std::cmp::Ordering::Greater => DiskSide::Outside,
    }
}

/// Position of `x` relative to the circle of squared radius `r2` about `c`.
pub fn point_disk(c: &Point<Rat>, r2: &Rat, x: &Point<Rat>) -> DiskSide {
    let (dx, dy) = x.sub(c);
    side(&(&dx * &dx + &dy * &dy), r2)
}

/// Position of the point of `s` closest to `c`: `Outside` means the
/// segment misses the closed disk, `On` that it only touches the circle.
pub fn segment_disk(c: &Point<Rat>, r2: &Rat, s: &Segment<Rat>) -> DiskSide {
    let (dx, dy) = s.b.sub(&s.a);
    let (wx, wy) = c.sub(&s.a);
    let len = &dx * &dx + &dy * &dy;
    let mut t = (&wx * &dx + &wy * &dy) / &len;
    if t < Rat::from_integer(0.into()) {
        t = Rat::from_integer(0.into());
    } else if t > Rat::from_integer(1.into()) {
        t = Rat::from_integer(1.into());
    }
    let px = &s.a.x + &t * &dx - &c.x;
    let py = &s.a.y + &t * &dy - &c.y;
    side(&(&px * &px + &py * &py), r2)
}

pub fn segment_meets_disk(c: &Point<Rat>, r2: &Rat, s: &Segment<Rat>) -> bool {
    segment_disk(c, r2, s) != DiskSide::Outside
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat, CycloReal};
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point<Rat> {
        Point::new(int(x), int(y))
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment<Rat> {
        Segment::new(p(a.0, a.1), p(b.0, b.1))
    }

    #[test]
    fn basic_orientation() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(3, 3)), 0);
        // Nearly collinear points beyond the float filter.
        let a = Point::new(rat(1, 3), rat(1, 3));
        let b = Point::new(rat(1, 1 << 40), rat(1, 1 << 40));
        assert_eq!(orientation(&p(0, 0), &a, &b), 0);
        let c = Point::new(rat(1, 1 << 40), rat(1, (1 << 40) + 1));
        assert_eq!(orientation(&p(0, 0), &a, &c), -1);
    }

    #[test]
    fn relations() {
        assert_eq!(segment_relation(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))), SegmentRelation::ProperCross(p(1, 1)));
        assert_eq!(
            segment_relation(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 1))),
            SegmentRelation::EndpointTouch(p(1, 0))
        );
        assert_eq!(segment_relation(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))), SegmentRelation::CollinearOverlap);
        assert_eq!(
            segment_relation(&seg((0, 0), (1, 0)), &seg((1, 0), (3, 0))),
            SegmentRelation::EndpointTouch(p(1, 0))
        );
        assert_eq!(segment_relation(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))), SegmentRelation::Disjoint);
        assert_eq!(
            segment_relation(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 5))),
            SegmentRelation::EndpointTouch(p(1, 0))
        );
    }

    #[test]
    fn hexagon_diagonals_meet_at_center() {
        let m = 12;
        let v: Vec<Point<CycloReal>> =
            (0..6).map(|k| Point::new(CycloReal::cos_2pi(m, 2 * k), CycloReal::sin_2pi(m, 2 * k))).collect();
        let o = Point::new(CycloReal::zero(m), CycloReal::zero(m));
        let d03 = Segment::new(v[0].clone(), v[3].clone());
        let d14 = Segment::new(v[1].clone(), v[4].clone());
        assert_eq!(segment_relation(&d03, &d14), SegmentRelation::ProperCross(o.clone()));
        assert_eq!(orientation(&v[0], &v[3], &v[1]) + orientation(&v[0], &v[3], &v[4]), 0);
        for (i, j) in [(0, 3), (1, 4), (2, 5)] {
            assert_eq!(orientation(&v[i], &v[j], &o), 0);
        }
    }

    #[test]
    fn disk_predicates() {
        let c = p(0, 0);
        let one = int(1);
        assert_eq!(point_disk(&c, &one, &p(0, 0)), DiskSide::Inside);
        assert_eq!(point_disk(&c, &one, &p(0, 1)), DiskSide::On);
        assert!(!segment_meets_disk(&c, &one, &seg((2, -1), (2, 1))));
        assert!(segment_meets_disk(&c, &one, &seg((0, -2), (0, 2))));
        assert_eq!(segment_disk(&c, &one, &seg((1, -1), (1, 1))), DiskSide::On);
    }

    fn small() -> impl Strategy<Value = (i64, i64)> {
        (-6i64..6, -6i64..6)
    }

    proptest! {
        #[test]
        fn orientation_is_antisymmetric(a in small(), b in small(), c in small()) {
            let (a, b, c) = (p(a.0, a.1), p(b.0, b.1), p(c.0, c.1));
            let o = orientation(&a, &b, &c);
            prop_assert_eq!(orientation(&b, &a, &c), -o);
            prop_assert_eq!(orientation(&a, &c, &b), -o);
            prop_assert_eq!(orientation(&b, &c, &a), o);
        }

        #[test]
        fn relation_is_symmetric(a in small(), b in small(), c in small(), d in small()) {
            prop_assume!(a != b && c != d);
            let s1 = seg(a, b);
            let s2 = seg(c, d);
            let r12 = segment_relation(&s1, &s2);
            let r21 = segment_relation(&s2, &s1);
            prop_assert_eq!(&r12, &r21);
            if let SegmentRelation::ProperCross(x) | SegmentRelation::EndpointTouch(x) = &r12 {
                prop_assert!(s1.contains(x) && s2.contains(x));
            }
        }
    }
}
