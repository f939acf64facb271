use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::json;

use super::{check_sizes, on_points, VerificationReport, VerifyError};
use crate::arrangement::{HPoint, PlanarSubdivision};
use crate::geom::{cross, dot, format_rat, orientation, Placement, Point, Rat, Scalar, Segment};
use crate::graph::Graph;

/// Simple polygon inside the closed outer face: a bounding box joined by a
/// thin slit to a ring hugging the drawing from outside.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstaclePolygon {
    pub ring: Vec<Point<Rat>>,
    /// Indices of the two slit segments' inner ends.
    pub slit: (usize, usize),
    /// Offset distance used for the inner ring.
    pub epsilon: Rat,
}

impl ObstaclePolygon {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ring": self.ring.iter().map(|p| [format_rat(&p.x), format_rat(&p.y)]).collect::<Vec<_>>(),
            "slit": [self.slit.0, self.slit.1],
            "epsilon": format_rat(&self.epsilon),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonSide {
    Inside,
    On,
    Outside,
}

/// Exact crossing-number test.
pub fn point_in_polygon<S: Scalar>(poly: &[Point<S>], q: &Point<S>) -> PolygonSide {
    let k = poly.len();
    let mut inside = false;
    for i in 0..k {
        let (a, b) = (&poly[i], &poly[(i + 1) % k]);
        if Segment::new(a.clone(), b.clone()).contains(q) {
            return PolygonSide::On;
        }
        let a_above = a.y.cmp_exact(&q.y).is_gt();
        let b_above = b.y.cmp_exact(&q.y).is_gt();
        if a_above != b_above {
            let o = orientation(a, b, q);
            if (b_above && o > 0) || (!b_above && o < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        PolygonSide::Inside
    } else {
        PolygonSide::Outside
    }
}

/// Do the closed segments `ab` and `cd` share a point?
fn segments_meet<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>, d: &Point<S>) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    if o1 == 0 && o2 == 0 {
        let s = Segment::new(a.clone(), b.clone());
        let t = Segment::new(c.clone(), d.clone());
        return s.contains(c) || s.contains(d) || t.contains(a) || t.contains(b);
    }
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 * o2 <= 0 && o3 * o4 <= 0
}

/// Builds an explicit obstacle for a valid OOR with a connected drawing and
/// validates it exactly: simple, disjoint from the drawing, and containing
/// one outer witness per non-edge.
pub fn materialize_obstacle(
    g: &Graph,
    pl: &Placement,
    report: &VerificationReport,
) -> Result<ObstaclePolygon, VerifyError> {
    check_sizes(g, pl)?;
    if !report.valid || report.n != g.n() {
        return Err(VerifyError::Precondition("report is not a valid OOR of this graph".into()));
    }
    on_points!(pl, |p| materialize_points(g, p, report))
}

fn hpoint_rat<S: Scalar>(h: &HPoint<S>) -> Point<Rat> {
    let w = h.w.snap();
    Point::new(h.x.snap() / &w, h.y.snap() / &w)
}

fn sub2(a: &Point<Rat>, b: &Point<Rat>) -> (Rat, Rat) {
    (&a.x - &b.x, &a.y - &b.y)
}

fn l1(d: &(Rat, Rat)) -> Rat {
    d.0.abs() + d.1.abs()
}

fn step(p: &Point<Rat>, d: &(Rat, Rat), eps: &Rat) -> Point<Rat> {
    let s = eps / l1(d);
    Point::new(&p.x + &d.0 * &s, &p.y + &d.1 * &s)
}

/// Offset directions into the exterior wedge at a walk node with incoming
/// direction `a` and outgoing `b` (exterior on the left); two at dead ends.
fn offset_dirs(a: &(Rat, Rat), b: &(Rat, Rat)) -> Vec<(Rat, Rat)> {
    let c = cross(&b.0, &b.1, &-&a.0, &-&a.1);
    if c.is_positive() {
        vec![(&b.0 - &a.0, &b.1 - &a.1)]
    } else if c.is_negative() {
        vec![(&a.0 - &b.0, &a.1 - &b.1)]
    } else if dot(&a.0, &a.1, &b.0, &b.1).is_positive() {
        vec![(-&b.1, b.0.clone())]
    } else {
        let left = (-&a.1, a.0.clone());
        vec![(&a.0 + &left.0, &a.1 + &left.1), (&a.0 - &left.0, &a.1 - &left.1)]
    }
}

fn round_to(r: &Rat, bits: u32) -> Rat {
    let scale = Rat::from_integer(BigInt::one() << bits);
    (r * &scale).round() / scale
}

fn rotate(p: &Point<Rat>, quarter_turns: usize) -> Point<Rat> {
    let mut q = p.clone();
    for _ in 0..quarter_turns % 4 {
        q = Point::new(-&q.y, q.x.clone());
    }
    q
}

/// Keyhole polygon in a frame where the slit leaves the ring upwards.
fn keyhole(
    ring: &[Point<Rat>],
    bbox: &(Rat, Rat, Rat, Rat),
    forward: bool,
    lambda: &Rat,
) -> Option<(Vec<Point<Rat>>, (usize, usize))> {
    let k = ring.len();
    let r = (0..k).max_by(|&i, &j| ring[i].y.cmp(&ring[j].y).then(ring[i].x.cmp(&ring[j].x)))?;
    let c = if forward { (r + 1) % k } else { (r + k - 1) % k };
    let (dx, dy) = sub2(&ring[c], &ring[r]);
    let r2 = Point::new(&ring[r].x + &dx * lambda, &ring[r].y + &dy * lambda);
    if r2.x == ring[r].x {
        return None;
    }
    let (x0, y0, x1, y1) = bbox;
    let mut poly = vec![ring[r].clone(), Point::new(ring[r].x.clone(), y1.clone())];
    let corners = if r2.x < ring[r].x {
        [(x1, y1), (x1, y0), (x0, y0), (x0, y1)]
    } else {
        [(x0, y1), (x0, y0), (x1, y0), (x1, y1)]
    };
    poly.extend(corners.iter().map(|(x, y)| Point::new((*x).clone(), (*y).clone())));
    poly.push(Point::new(r2.x.clone(), y1.clone()));
    let inner = poly.len();
    poly.push(r2);
    for j in 0..k - 1 {
        let idx = if forward { (c + j) % k } else { (c + k - j) % k };
        poly.push(ring[idx].clone());
    }
    Some((poly, (0, inner)))
}

fn materialize_points<S: Scalar>(
    g: &Graph,
    p: &[Point<S>],
    report: &VerificationReport,
) -> Result<ObstaclePolygon, VerifyError> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(VerifyError::Precondition("drawing has no edges".into()));
    }
    let sub = PlanarSubdivision::build(p, &edges)?;
    if sub.component_count() != 1 {
        return Err(VerifyError::Precondition("drawing must be connected".into()));
    }
    let witnesses: Vec<Point<S>> = report.witnesses.iter().map(|w| p[w.u].lerp(&p[w.v], &w.t)).collect();
    let walk = sub.outer_walk(0).expect("connected drawing has an outer walk");
    let pos: Vec<Point<Rat>> = walk.iter().map(|&h| hpoint_rat(&sub.nodes[sub.half[h].origin].pos)).collect();
    let k = pos.len();
    let dirs: Vec<Vec<(Rat, Rat)>> =
        (0..k).map(|i| offset_dirs(&sub2(&pos[i], &pos[(i + k - 1) % k]), &sub2(&pos[(i + 1) % k], &pos[i]))).collect();
    let mut eps = (0..k).map(|i| l1(&sub2(&pos[(i + 1) % k], &pos[i]))).min().expect("outer walk is non-empty")
        / Rat::from_integer(4.into());
    let mut extent: Vec<Point<Rat>> = p.iter().map(|q| Point::new(q.x.snap(), q.y.snap())).collect();
    extent.extend(witnesses.iter().map(|q| Point::new(q.x.snap(), q.y.snap())));
    let like = &p[0].x;
    let lambdas = [Rat::new(1.into(), 2.into()), Rat::new(1.into(), 16.into()), Rat::new(1.into(), 256.into())];
    for _ in 0..48 {
        let bits = (-eps.to_f64().unwrap_or(0.0).log2()).ceil().max(0.0) as u32 + 12;
        let ring: Vec<Point<Rat>> = (0..k)
            .flat_map(|i| dirs[i].iter().map(move |d| (i, d)))
            .map(|(i, d)| {
                let q = step(&pos[i], d, &eps);
                Point::new(round_to(&q.x, bits), round_to(&q.y, bits))
            })
            .collect();
        for frame in 0..4 {
            let rring: Vec<Point<Rat>> = ring.iter().map(|q| rotate(q, frame)).collect();
            let all: Vec<Point<Rat>> = rring.iter().cloned().chain(extent.iter().map(|q| rotate(q, frame))).collect();
            let one = Rat::one();
            let x0 = all.iter().map(|q| q.x.clone()).min().unwrap() - &one;
            let x1 = all.iter().map(|q| q.x.clone()).max().unwrap() + &one;
            let y0 = all.iter().map(|q| q.y.clone()).min().unwrap() - &one;
            let y1 = all.iter().map(|q| q.y.clone()).max().unwrap() + &one;
            let bbox = (round_to(&x0, 0), round_to(&y0, 0), round_to(&x1, 0) + &one, round_to(&y1, 0) + &one);
            for forward in [true, false] {
                for lambda in &lambdas {
                    let Some((poly, slit)) = keyhole(&rring, &bbox, forward, lambda) else { continue };
                    let poly: Vec<Point<Rat>> = poly.iter().map(|q| rotate(q, 4 - frame)).collect();
                    if validate(&poly, like, p, &edges, &witnesses) {
                        return Ok(ObstaclePolygon { ring: poly, slit, epsilon: eps });
                    }
                }
            }
        }
        eps /= Rat::from_integer(2.into());
    }
    Err(VerifyError::Obstacle("no valid slit and offset found".into()))
}

fn validate<S: Scalar>(
    poly: &[Point<Rat>],
    like: &S,
    p: &[Point<S>],
    edges: &[(usize, usize)],
    witnesses: &[Point<S>],
) -> bool {
    let q: Vec<Point<S>> =
        poly.iter().map(|v| Point::new(like.from_rat_like(&v.x), like.from_rat_like(&v.y))).collect();
    let k = q.len();
    for i in 0..k {
        for j in i + 1..k {
            if q[i] == q[j] {
                return false;
            }
        }
    }
    for w in witnesses {
        if point_in_polygon(&q, w) != PolygonSide::Inside {
            return false;
        }
    }
    if point_in_polygon(&q, &p[0]) != PolygonSide::Outside {
        return false;
    }
    for i in 0..k {
        let (a, b) = (&q[i], &q[(i + 1) % k]);
        for &(u, v) in edges {
            if segments_meet(a, b, &p[u], &p[v]) {
                return false;
            }
        }
        // Adjacent sides may only share their common vertex.
        let c = &q[(i + 2) % k];
        let (ux, uy) = b.sub(a);
        let (vx, vy) = c.sub(b);
        if orientation(a, b, c) == 0 && dot(&ux, &uy, &vx, &vy).sign() < 0 {
            return false;
        }
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            if segments_meet(a, b, &q[j], &q[(j + 1) % k]) {
                return false;
            }
        }
    }
    true
}
