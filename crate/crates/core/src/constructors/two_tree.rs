//! Reducible OORs of 2-trees by stacking groups on horizontal lines inside
//! the arc regions of active vertices.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use super::arcs::{
    disk_clear_of_circle, dist2, dist2_segment, point_in_region, segment_meets_arc, segment_meets_region, Wedge,
};
use super::ConstructError;
use crate::arrangement::PlanarSubdivision;
use crate::geom::{cross, dyadic, format_rat, int, orientation, Placement, Point, Rat};
use crate::graph::{two_tree_plan, Graph, StackingPlan};
use crate::verifier::{restrict_representation, verify_oor, Deletion, Restriction};

/// Arc `C_v` about a stacked vertex `v`; `R_v` is the open disk minus the
/// closed wedge spanned by the parent edges.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcRecord {
    pub vertex: usize,
    pub r2: Rat,
    /// Far endpoints of the parent edges `e_l = (vertex, left)` and
    /// `e_r = (vertex, right)`, with `e_r` counter-clockwise from `e_l`.
    pub left: usize,
    pub right: usize,
    /// Arc endpoints as squared fractions of the parent-edge lengths.
    pub end_params_sq: (Rat, Rat),
    pub active: bool,
}

/// Arc records indexed by vertex; base vertices have none.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArcScaffold {
    pub arcs: Vec<Option<ArcRecord>>,
}

impl ArcScaffold {
    fn wedge(&self, v: usize, pts: &[Option<Point<Rat>>]) -> Option<Wedge> {
        let a = self.arcs[v].as_ref()?;
        let c = pts[v].clone()?;
        let dl = pts[a.left].as_ref()?.sub(&c);
        let dr = pts[a.right].as_ref()?.sub(&c);
        Some(Wedge { c, dl, dr })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    /// Vertex whose group was placed; `None` for the base group.
    pub active: Option<usize>,
    pub placed: Vec<usize>,
    /// Height of the horizontal line carrying the group.
    pub height: Rat,
    /// Width of each side group along the line (stands in for the angle).
    pub spread: Rat,
    pub points: Vec<Option<Point<Rat>>>,
    pub edges: Vec<(usize, usize)>,
    pub scaffold: ArcScaffold,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionTrace {
    pub base: (usize, usize),
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    /// Checks invariants (i)-(iv) after every step with exact predicates.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, step) in self.steps.iter().enumerate() {
            check_step(step).map_err(|e| format!("step {i}: {e}"))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<_> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "active": s.active,
                    "placed": s.placed,
                    "height": format_rat(&s.height),
                    "spread": format_rat(&s.spread),
                    "arcs": s.scaffold.arcs.iter().flatten().map(|a| json!({
                        "vertex": a.vertex,
                        "r2": format_rat(&a.r2),
                        "left": a.left,
                        "right": a.right,
                        "active": a.active,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "base": [self.base.0, self.base.1], "steps": steps })
    }
}

fn check_step(step: &TraceStep) -> Result<(), String> {
    let pts = &step.points;
    let sc = &step.scaffold;
    let placed: Vec<usize> = (0..pts.len()).filter(|&v| pts[v].is_some()).collect();
    let p = |v: usize| pts[v].as_ref().expect("placed vertex");
    let edge_set: BTreeSet<(usize, usize)> = step.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for rec in sc.arcs.iter().flatten() {
        let u = rec.vertex;
        let w = sc.wedge(u, pts).ok_or("arc without placed parents")?;
        // (i) parent edges below, arc endpoints on them, arc uncrossed.
        if p(rec.left).y >= p(u).y || p(rec.right).y >= p(u).y {
            return Err(format!("parent edges of {u} are not below it"));
        }
        if !cross(&w.dl.0, &w.dl.1, &w.dr.0, &w.dr.1).is_positive() {
            return Err(format!("parent edges of {u} are misordered"));
        }
        let one = Rat::one();
        for t in [&rec.end_params_sq.0, &rec.end_params_sq.1] {
            if !t.is_positive() || *t >= one {
                return Err(format!("arc endpoint of {u} is off its parent edge"));
            }
        }
        if rec.end_params_sq.0 != &rec.r2 / dist2(p(u), p(rec.left))
            || rec.end_params_sq.1 != &rec.r2 / dist2(p(u), p(rec.right))
        {
            return Err(format!("arc endpoints of {u} disagree with its radius"));
        }
        for &(a, b) in &step.edges {
            if a != u && b != u && segment_meets_arc(&w, &rec.r2, p(a), p(b)) {
                return Err(format!("edge {a}-{b} crosses the arc of {u}"));
            }
        }
        // (iii) active regions are empty.
        if rec.active {
            if let Some(&x) = placed.iter().find(|&&x| x != u && point_in_region(&w, &rec.r2, p(x))) {
                return Err(format!("vertex {x} lies in R_{u}"));
            }
            if let Some(&(a, b)) = step.edges.iter().find(|&&(a, b)| segment_meets_region(&w, &rec.r2, p(a), p(b))) {
                return Err(format!("edge {a}-{b} meets R_{u}"));
            }
            for other in sc.arcs.iter().flatten().filter(|o| o.vertex != u) {
                let z = p(other.vertex);
                let clear = disk_clear_of_circle(p(u), &rec.r2, z, &other.r2) || disk_in_wedge(&w, z, &other.r2);
                if !clear {
                    return Err(format!("arc of {} may meet R_{u}", other.vertex));
                }
            }
        }
    }
    // (ii) every non-edge leaves an endpoint's disk through its arc.
    for (i, &a) in placed.iter().enumerate() {
        for &b in &placed[i + 1..] {
            if edge_set.contains(&(a, b)) {
                continue;
            }
            let through = |x: usize, y: usize| match (&sc.arcs[x], sc.wedge(x, pts)) {
                (Some(rec), Some(w)) => dist2(p(x), p(y)) > rec.r2 && !w.contains(p(y)),
                _ => false,
            };
            if !through(a, b) && !through(b, a) {
                return Err(format!("non-edge {a}-{b} misses both arcs"));
            }
        }
    }
    // (iv) every vertex on the outer face.
    let index: Vec<usize> = {
        let mut idx = vec![usize::MAX; pts.len()];
        for (i, &v) in placed.iter().enumerate() {
            idx[v] = i;
        }
        idx
    };
    let local: Vec<Point<Rat>> = placed.iter().map(|&v| p(v).clone()).collect();
    let edges: Vec<(usize, usize)> = step.edges.iter().map(|&(a, b)| (index[a], index[b])).collect();
    let sub = PlanarSubdivision::build(&local, &edges).map_err(|e| e.to_string())?;
    if let Some(i) = (0..local.len()).find(|&i| !sub.vertex_on_unbounded(i)) {
        return Err(format!("vertex {} is not on the outer face", placed[i]));
    }
    Ok(())
}

/// Is the closed disk about `z` strictly inside the wedge's open interior?
fn disk_in_wedge(w: &Wedge, z: &Point<Rat>, r2: &Rat) -> bool {
    if !w.contains(z) {
        return false;
    }
    [&w.dl, &w.dr].iter().all(|d| {
        let far = Point::new(&w.c.x + &d.0, &w.c.y + &d.1);
        dist2_ray(z, &w.c, &far) > *r2
    })
}

fn dist2_ray(x: &Point<Rat>, a: &Point<Rat>, through: &Point<Rat>) -> Rat {
    let (ex, ey) = through.sub(a);
    let (wx, wy) = x.sub(a);
    let t = ((&wx * &ex + &wy * &ey) / (&ex * &ex + &ey * &ey)).max(Rat::zero());
    let px = &a.x + &t * &ex - &x.x;
    let py = &a.y + &t * &ey - &x.y;
    &px * &px + &py * &py
}

struct Builder {
    pts: Vec<Option<Point<Rat>>>,
    edges: Vec<(usize, usize)>,
    scaffold: ArcScaffold,
}

/// A new vertex with its parents `(v, p)`.
struct Kid {
    id: usize,
    at: Point<Rat>,
    v: usize,
    p: usize,
}

impl Builder {
    fn p(&self, v: usize) -> &Point<Rat> {
        self.pts[v].as_ref().expect("placed vertex")
    }

    /// Arc radii for the kids (in order), or `None` if some kid has no
    /// admissible radius.
    fn radii(&self, kids: &[Kid]) -> Option<Vec<ArcRecord>> {
        let mut pts = self.pts.clone();
        let mut edges = self.edges.clone();
        for k in kids {
            pts[k.id] = Some(k.at.clone());
            edges.push((k.id, k.v));
            edges.push((k.id, k.p));
        }
        let sixteen = int(16);
        let mut out: Vec<ArcRecord> = Vec::with_capacity(kids.len());
        for k in kids {
            let w = &k.at;
            let vertex_d = pts
                .iter()
                .enumerate()
                .filter(|&(x, q)| x != k.id && q.is_some())
                .map(|(_, q)| dist2(w, q.as_ref().unwrap()));
            let edge_d = edges
                .iter()
                .filter(|&&(a, b)| a != k.id && b != k.id)
                .map(|&(a, b)| dist2_segment(w, pts[a].as_ref().unwrap(), pts[b].as_ref().unwrap()));
            let mut r2 = vertex_d.chain(edge_d).min()? / &sixteen;
            if !r2.is_positive() {
                return None;
            }
            let others = self.scaffold.arcs.iter().flatten().map(|a| (self.p(a.vertex).clone(), a.r2.clone()));
            let fresh = out.iter().map(|a| (pts[a.vertex].clone().unwrap(), a.r2.clone()));
            let circles: Vec<(Point<Rat>, Rat)> = others.chain(fresh).collect();
            let mut tries = 0;
            while !circles.iter().all(|(c, rr)| disk_clear_of_circle(w, &r2, c, rr)) {
                tries += 1;
                if tries > 40 {
                    return None;
                }
                r2 /= int(4);
            }
            let (pv, pp) = (pts[k.v].as_ref().unwrap(), pts[k.p].as_ref().unwrap());
            let (dv, dp) = (pv.sub(w), pp.sub(w));
            let c = cross(&dv.0, &dv.1, &dp.0, &dp.1);
            let (left, right) = if c.is_positive() {
                (k.v, k.p)
            } else if c.is_negative() {
                (k.p, k.v)
            } else {
                return None;
            };
            let end_params_sq =
                (&r2 / dist2(w, pts[left].as_ref().unwrap()), &r2 / dist2(w, pts[right].as_ref().unwrap()));
            out.push(ArcRecord { vertex: k.id, r2, left, right, end_params_sq, active: true });
        }
        Some(out)
    }

    fn commit(&mut self, kids: Vec<Kid>, arcs: Vec<ArcRecord>) {
        for k in kids {
            self.pts[k.id] = Some(k.at);
            self.edges.push((k.id, k.v));
            self.edges.push((k.id, k.p));
        }
        for a in arcs {
            let v = a.vertex;
            self.scaffold.arcs[v] = Some(a);
        }
    }

    /// Exact property (b): the closed cone at each kid spanned by its
    /// parent edges holds no other vertex.
    fn cones_empty(&self, kids: &[Kid]) -> bool {
        let all: Vec<(usize, &Point<Rat>)> = self
            .pts
            .iter()
            .enumerate()
            .filter_map(|(i, q)| q.as_ref().map(|q| (i, q)))
            .chain(kids.iter().map(|k| (k.id, &k.at)))
            .collect();
        kids.iter().all(|k| {
            let (pv, pp) = (self.p(k.v), self.p(k.p));
            let s = orientation(&k.at, pv, pp);
            s != 0
                && all.iter().all(|&(x, q)| {
                    x == k.id
                        || x == k.v
                        || x == k.p
                        || !(orientation(&k.at, pv, q) * s >= 0 && orientation(&k.at, q, pp) * s >= 0)
                })
        })
    }
}

/// Exact property (a): the far parent edge `[w, p]` of a kid enters the wedge
/// of `v` across the other parent-edge ray `c + mu d` within the disk.
fn leaves_through_wedge(w: &Point<Rat>, p: &Point<Rat>, c: &Point<Rat>, d: &(Rat, Rat), r2: &Rat) -> bool {
    let a = p.sub(w);
    let den = cross(&a.0, &a.1, &d.0, &d.1);
    if den.is_zero() {
        return false;
    }
    let vw = c.sub(w);
    let t = cross(&vw.0, &vw.1, &d.0, &d.1) / &den;
    let wv = w.sub(c);
    let mu = cross(&wv.0, &wv.1, &a.0, &a.1) / -&den;
    let len2 = &d.0 * &d.0 + &d.1 * &d.1;
    t.is_positive() && t < Rat::one() && mu.is_positive() && &mu * &mu * len2 < *r2
}

/// Places the rational reducible OOR of the 2-tree replayed by `plan`.
pub fn construct_two_tree(plan: &StackingPlan) -> Result<(Placement, ConstructionTrace), ConstructError> {
    plan.replay()?;
    let n = plan.n;
    let mut b = Builder { pts: vec![None; n], edges: Vec::new(), scaffold: ArcScaffold { arcs: vec![None; n] } };
    let (b0, b1) = plan.base;
    b.pts[b0] = Some(Point::new(int(0), int(0)));
    b.pts[b1] = Some(Point::new(int(1), int(0)));
    b.edges.push((b0, b1));
    let mut trace = ConstructionTrace { base: plan.base, steps: Vec::new() };

    let base_kids: Vec<usize> =
        plan.groups.first().map(|g| g.edges.iter().flat_map(|e| e.1.clone()).collect()).unwrap_or_default();
    if !base_kids.is_empty() {
        let m = base_kids.len() as i64;
        let kids: Vec<Kid> = base_kids
            .iter()
            .enumerate()
            .map(|(i, &id)| Kid {
                id,
                at: Point::new(Rat::new((i as i64 + 1).into(), (m + 1).into()), int(1)),
                v: b0,
                p: b1,
            })
            .collect();
        let arcs = b.radii(&kids).ok_or_else(|| ConstructError::Failed("no arc radius for the base group".into()))?;
        b.commit(kids, arcs);
        record(&mut trace, &b, None, base_kids, int(1), int(1));
    }

    for group in plan.groups.iter().skip(1) {
        let v = group.active.ok_or_else(|| ConstructError::Failed("group without an active vertex".into()))?;
        let arc = b.scaffold.arcs[v].clone().ok_or_else(|| ConstructError::Failed(format!("vertex {v} has no arc")))?;
        let mut left_kids = Vec::new();
        let mut right_kids = Vec::new();
        for (p, kids) in &group.edges {
            if *p == arc.left {
                left_kids.extend(kids.iter().copied());
            } else if *p == arc.right {
                right_kids.extend(kids.iter().copied());
            } else {
                return Err(ConstructError::Failed(format!("{v}-{p} is not a parent edge of {v}")));
            }
        }
        if let Some(a) = b.scaffold.arcs[v].as_mut() {
            a.active = false;
        }
        if left_kids.is_empty() && right_kids.is_empty() {
            continue;
        }
        let (height, spread) = place_group(&mut b, &arc, &left_kids, &right_kids)?;
        let placed = left_kids.iter().chain(&right_kids).copied().collect();
        record(&mut trace, &b, Some(v), placed, height, spread);
    }
    let points: Vec<Point<Rat>> = b.pts.into_iter().map(|q| q.expect("every vertex placed")).collect();
    Ok((Placement::rational(points)?, trace))
}

fn record(
    trace: &mut ConstructionTrace,
    b: &Builder,
    active: Option<usize>,
    placed: Vec<usize>,
    height: Rat,
    spread: Rat,
) {
    trace.steps.push(TraceStep {
        active,
        placed,
        height,
        spread,
        points: b.pts.clone(),
        edges: b.edges.clone(),
        scaffold: b.scaffold.clone(),
    });
}

/// Halving search for the line height and group spread; returns both.
fn place_group(
    b: &mut Builder,
    arc: &ArcRecord,
    left: &[usize],
    right: &[usize],
) -> Result<(Rat, Rat), ConstructError> {
    let v = arc.vertex;
    let c = b.p(v).clone();
    let (pl, pr) = (b.p(arc.left).clone(), b.p(arc.right).clone());
    let (dl, dr) = (pl.sub(&c), pr.sub(&c));
    let r = arc.r2.to_f64().unwrap_or(0.0).sqrt();
    let bits = (-r.log2()).ceil().max(0.0) as u32 + 24;
    let mut delta = dyadic(r / 2.0, bits);
    let two = int(2);
    while !delta.is_positive() || &delta * &delta >= arc.r2 {
        if !delta.is_positive() {
            return Err(ConstructError::Failed(format!("arc of {v} is too small")));
        }
        delta /= &two;
    }
    let on_line = |d: &(Rat, Rat), delta: &Rat| {
        let s = delta / -&d.1;
        Point::new(&c.x - &d.0 * &s, &c.y - &d.1 * &s)
    };
    for _ in 0..24 {
        let (xl, xr) = (on_line(&dl, &delta), on_line(&dr, &delta));
        if dist2(&xl, &c) >= arc.r2 || dist2(&xr, &c) >= arc.r2 {
            delta /= &two;
            continue;
        }
        let y = &c.y + &delta;
        let mut spread = delta.clone();
        for _ in 0..64 {
            let mut kids = Vec::with_capacity(left.len() + right.len());
            let nl = int(left.len() as i64 + 1);
            for (i, &id) in left.iter().enumerate() {
                let x = &xl.x + &spread * int(i as i64 + 1) / &nl;
                kids.push(Kid { id, at: Point::new(x, y.clone()), v, p: arc.left });
            }
            let nr = int(right.len() as i64 + 1);
            for (i, &id) in right.iter().enumerate() {
                let x = &xr.x - &spread * int(i as i64 + 1) / &nr;
                kids.push(Kid { id, at: Point::new(x, y.clone()), v, p: arc.right });
            }
            let inside = kids.iter().all(|k| dist2(&k.at, &c) < arc.r2);
            let prop_a = inside
                && kids.iter().all(|k| {
                    if k.p == arc.left {
                        leaves_through_wedge(&k.at, &pl, &c, &dr, &arc.r2)
                    } else {
                        leaves_through_wedge(&k.at, &pr, &c, &dl, &arc.r2)
                    }
                });
            if prop_a && b.cones_empty(&kids) {
                if let Some(arcs) = b.radii(&kids) {
                    b.commit(kids, arcs);
                    return Ok((y, spread));
                }
            }
            spread /= &two;
        }
        delta /= &two;
    }
    Err(ConstructError::Failed(format!("no admissible group placement for the children of {v}")))
}

/// Output of the partial 2-tree pipeline.
#[derive(Clone, Debug)]
pub struct TwoTreeOutput {
    /// Completed 2-tree and its placement.
    pub completed: Graph,
    pub trace: ConstructionTrace,
    /// The input graph with the inherited placement and its report.
    pub restriction: Restriction,
}

/// OOR of a connected partial 2-tree: build the completed 2-tree, then
/// delete the fill edges from its reducible representation.
pub fn construct_partial_two_tree(g: &Graph) -> Result<TwoTreeOutput, ConstructError> {
    let plan = two_tree_plan(g)?;
    let completed = plan.replay()?;
    let (pl, trace) = construct_two_tree(&plan)?;
    let report = verify_oor(&completed, &pl)?;
    if !(report.valid && report.reducible) {
        return Err(ConstructError::Failed("completed 2-tree drawing is not a reducible OOR".into()));
    }
    let restriction = restrict_representation(
        &completed,
        &pl,
        &report,
        &Deletion { edges: plan.fill_edges.clone(), vertices: vec![] },
    )?;
    Ok(TwoTreeOutput { completed, trace, restriction })
}
