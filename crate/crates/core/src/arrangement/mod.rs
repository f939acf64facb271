//! Planar subdivision of a straight-line drawing: crossings become nodes,
//! faces are traced from the rotation system, and the unbounded face is
//! identified exactly.

mod query;

use std::cmp::Ordering;

use crate::geom::{cross, dot, orientation, Point, Scalar};

pub use query::{ContactReport, Location, Piece, PieceSite};

pub type NodeId = usize;
pub type HalfId = usize;
pub type FaceId = usize;

/// The unbounded face always has id 0.
pub const UNBOUNDED: FaceId = 0;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("edges {0} and {1} overlap in a segment of positive length")]
    CollinearOverlap(usize, usize),
    #[error("edge {0} repeats an earlier edge")]
    DuplicateEdge(usize),
    #[error("edge {0} has coincident endpoints")]
    DegenerateEdge(usize),
    #[error("query segment has zero length")]
    DegenerateSegment,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("Euler relation violated: V={v} E={e} F={f} C={c}")]
    Euler { v: usize, e: usize, f: usize, c: usize },
}

/// Projective point `(x/w, y/w)` with `w > 0`.
#[derive(Clone, Debug)]
pub struct HPoint<S> {
    pub x: S,
    pub y: S,
    pub w: S,
}

impl<S: Scalar> HPoint<S> {
    fn affine(p: &Point<S>) -> Self {
        HPoint { x: p.x.clone(), y: p.y.clone(), w: p.x.one_like() }
    }

    pub fn approx(&self) -> (f64, f64) {
        let w = self.w.approx().0;
        (self.x.approx().0 / w, self.y.approx().0 / w)
    }

    fn cmp_lex(&self, o: &Self) -> Ordering {
        let a = self.x.times(&o.w);
        let b = o.x.times(&self.w);
        a.cmp_exact(&b).then_with(|| self.y.times(&o.w).cmp_exact(&o.y.times(&self.w)))
    }

    fn cmp_y(&self, o: &Self) -> Ordering {
        self.y.times(&o.w).cmp_exact(&o.y.times(&self.w))
    }
}

/// Orientation of three projective points with positive weights.
fn h_orientation<S: Scalar>(p: &HPoint<S>, q: &HPoint<S>, r: &HPoint<S>) -> i8 {
    let m1 = q.y.times(&r.w).minus(&q.w.times(&r.y));
    let m2 = q.x.times(&r.w).minus(&q.w.times(&r.x));
    let m3 = q.x.times(&r.y).minus(&q.y.times(&r.x));
    p.x.times(&m1).minus(&p.y.times(&m2)).plus(&p.w.times(&m3)).sign()
}

/// Parameter `num / den` along an edge or query segment (`den > 0`).
#[derive(Clone, Debug)]
pub struct Param<S> {
    pub num: S,
    pub den: S,
}

impl<S: Scalar> Param<S> {
    fn new(num: S, den: S) -> Self {
        if den.sign() < 0 {
            Param { num: num.negated(), den: den.negated() }
        } else {
            Param { num, den }
        }
    }

    fn zero(like: &S) -> Self {
        Param { num: like.zero_like(), den: like.one_like() }
    }

    fn one(like: &S) -> Self {
        Param { num: like.one_like(), den: like.one_like() }
    }

    pub fn cmp(&self, o: &Self) -> Ordering {
        self.num.times(&o.den).cmp_exact(&o.num.times(&self.den))
    }

    pub fn approx(&self) -> f64 {
        self.num.approx().0 / self.den.approx().0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Vertex(usize),
    Crossing,
}

#[derive(Clone, Debug)]
pub struct Node<S> {
    pub pos: HPoint<S>,
    pub kind: NodeKind,
    /// Outgoing half-edges sorted counterclockwise starting from `+x`.
    pub out: Vec<HalfId>,
    pub component: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: NodeId,
    pub twin: HalfId,
    /// Originating drawing edge.
    pub edge: usize,
    /// Direction agrees with the edge's `a -> b`.
    pub forward: bool,
    pub next: HalfId,
    pub cycle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub start: HalfId,
    pub len: usize,
    pub face: FaceId,
    /// Outer boundary walk of its connected component.
    pub outer: bool,
    pub component: usize,
}

/// Planarization of segments between given points.
#[derive(Clone, Debug)]
pub struct PlanarSubdivision<S> {
    points: Vec<Point<S>>,
    edges: Vec<(usize, usize)>,
    dirs: Vec<(S, S)>,
    pub nodes: Vec<Node<S>>,
    pub half: Vec<HalfEdge>,
    pub cycles: Vec<Cycle>,
    /// Per edge: node parameters along it (including both endpoints).
    edge_nodes: Vec<Vec<(Param<S>, NodeId)>>,
    /// Per edge: forward half-edge of each sub-edge.
    edge_subs: Vec<Vec<HalfId>>,
    face_count: usize,
    /// Face containing each isolated node (`None` for nodes with edges).
    isolated_face: Vec<Option<FaceId>>,
    component_count: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Half-plane index for angular sorting from `+x` counterclockwise.
fn half_of<S: Scalar>(d: &(S, S)) -> u8 {
    let (sx, sy) = (d.0.sign(), d.1.sign());
    if sy > 0 || (sy == 0 && sx > 0) {
        0
    } else {
        1
    }
}

pub(crate) fn angle_cmp<S: Scalar>(a: &(S, S), b: &(S, S)) -> Ordering {
    half_of(a).cmp(&half_of(b)).then_with(|| 0.cmp(&cross(&a.0, &a.1, &b.0, &b.1).sign()))
}

struct Event<S> {
    t: Param<S>,
    key: usize,
}

impl<S: Scalar> PlanarSubdivision<S> {
    /// Builds the subdivision of the segments `points[a] points[b]`; edge
    /// ids are indices into `edges`. All points become nodes.
    pub fn build(points: &[Point<S>], edges: &[(usize, usize)]) -> Result<Self, ArrangementError> {
        let n = points.len();
        let mut seen = std::collections::HashSet::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(ArrangementError::VertexOutOfRange(a.max(b)));
            }
            if a == b || points[a] == points[b] {
                return Err(ArrangementError::DegenerateEdge(i));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(ArrangementError::DuplicateEdge(i));
            }
        }
        let m = edges.len();
        let dirs: Vec<(S, S)> = edges.iter().map(|&(a, b)| points[b].sub(&points[a])).collect();
        let seg = |e: usize| (&points[edges[e].0], &points[edges[e].1]);

        let mut events: Vec<Vec<Event<S>>> = (0..m).map(|_| Vec::new()).collect();
        let mut crossing_pairs: Vec<(usize, usize, Param<S>)> = Vec::new();

        // Vertices lying in the interior of edges.
        for (e, &(a, b)) in edges.iter().enumerate() {
            let (pa, pb) = seg(e);
            let len = dot(&dirs[e].0, &dirs[e].1, &dirs[e].0, &dirs[e].1);
            for (w, pw) in points.iter().enumerate() {
                if w == a || w == b || orientation(pa, pb, pw) != 0 {
                    continue;
                }
                let (wx, wy) = pw.sub(pa);
                let t = dot(&wx, &wy, &dirs[e].0, &dirs[e].1);
                if t.sign() > 0 && t.cmp_exact(&len) == Ordering::Less {
                    events[e].push(Event { t: Param::new(t, len.clone()), key: w });
                }
            }
        }

        // Pairwise edge tests.
        for e in 0..m {
            let (a, b) = seg(e);
            for f in e + 1..m {
                let (c, d) = seg(f);
                let shared = edges[e].0 == edges[f].0
                    || edges[e].0 == edges[f].1
                    || edges[e].1 == edges[f].0
                    || edges[e].1 == edges[f].1;
                let o1 = orientation(a, b, c);
                let o2 = orientation(a, b, d);
                if o1 == 0 && o2 == 0 {
                    if collinear_overlap(a, b, c, d, &dirs[e]) {
                        return Err(ArrangementError::CollinearOverlap(e, f));
                    }
                    continue;
                }
                if shared || o1 == 0 || o2 == 0 || o1 == o2 {
                    continue;
                }
                let o3 = orientation(c, d, a);
                let o4 = orientation(c, d, b);
                if o3 == 0 || o4 == 0 || o3 == o4 {
                    continue;
                }
                let (wx, wy) = c.sub(a);
                let den = cross(&dirs[e].0, &dirs[e].1, &dirs[f].0, &dirs[f].1);
                let te = Param::new(cross(&wx, &wy, &dirs[f].0, &dirs[f].1), den.clone());
                let tf = Param::new(cross(&wx, &wy, &dirs[e].0, &dirs[e].1), den);
                let key = n + crossing_pairs.len();
                events[e].push(Event { t: te.clone(), key });
                events[f].push(Event { t: tf, key });
                crossing_pairs.push((e, f, te));
            }
        }

        // Merge coincident events along every edge.
        let total = n + crossing_pairs.len();
        let mut uf = UnionFind((0..total).collect());
        for evs in &mut events {
            evs.sort_by(|x, y| x.t.cmp(&y.t));
            for i in 1..evs.len() {
                if evs[i - 1].t.cmp(&evs[i].t) == Ordering::Equal {
                    uf.union(evs[i - 1].key, evs[i].key);
                }
            }
        }
        let mut node_of = vec![usize::MAX; total];
        let mut nodes: Vec<Node<S>> = Vec::new();
        for (v, p) in points.iter().enumerate() {
            node_of[v] = nodes.len();
            nodes.push(Node {
                pos: HPoint::affine(p),
                kind: NodeKind::Vertex(v),
                out: Vec::new(),
                component: usize::MAX,
            });
        }
        for (i, (e, _, te)) in crossing_pairs.iter().enumerate() {
            let key = n + i;
            let root = uf.find(key);
            if root < n {
                node_of[key] = node_of[root];
                continue;
            }
            if node_of[root] == usize::MAX {
                let a = &points[edges[*e].0];
                let (rx, ry) = &dirs[*e];
                let pos = HPoint {
                    x: a.x.times(&te.den).plus(&te.num.times(rx)),
                    y: a.y.times(&te.den).plus(&te.num.times(ry)),
                    w: te.den.clone(),
                };
                node_of[root] = nodes.len();
                nodes.push(Node { pos, kind: NodeKind::Crossing, out: Vec::new(), component: usize::MAX });
            }
            node_of[key] = node_of[root];
        }

        // Sub-edges and half-edges.
        let mut half: Vec<HalfEdge> = Vec::new();
        let mut edge_nodes: Vec<Vec<(Param<S>, NodeId)>> = Vec::with_capacity(m);
        let mut edge_subs: Vec<Vec<HalfId>> = Vec::with_capacity(m);
        for (e, evs) in events.into_iter().enumerate() {
            let like = &dirs[e].0;
            let mut list: Vec<(Param<S>, NodeId)> = vec![(Param::zero(like), node_of[edges[e].0])];
            for ev in evs {
                let id = node_of[ev.key];
                if list.last().map(|l| l.1) != Some(id) {
                    list.push((ev.t, id));
                }
            }
            list.push((Param::one(like), node_of[edges[e].1]));
            let mut subs = Vec::with_capacity(list.len() - 1);
            for k in 0..list.len() - 1 {
                let (u, v) = (list[k].1, list[k + 1].1);
                let h = half.len();
                half.push(HalfEdge {
                    origin: u,
                    twin: h + 1,
                    edge: e,
                    forward: true,
                    next: usize::MAX,
                    cycle: usize::MAX,
                });
                half.push(HalfEdge {
                    origin: v,
                    twin: h,
                    edge: e,
                    forward: false,
                    next: usize::MAX,
                    cycle: usize::MAX,
                });
                nodes[u].out.push(h);
                nodes[v].out.push(h + 1);
                subs.push(h);
            }
            edge_nodes.push(list);
            edge_subs.push(subs);
        }

        let dir_of = |h: &HalfEdge| -> (S, S) {
            let d = &dirs[h.edge];
            if h.forward {
                d.clone()
            } else {
                (d.0.negated(), d.1.negated())
            }
        };
        for node in &mut nodes {
            node.out.sort_by(|&x, &y| angle_cmp(&dir_of(&half[x]), &dir_of(&half[y])));
        }
        // Position of each half-edge in its origin's rotation.
        let mut rot_index = vec![0usize; half.len()];
        for node in &nodes {
            for (i, &h) in node.out.iter().enumerate() {
                rot_index[h] = i;
            }
        }
        for h in 0..half.len() {
            let t = half[h].twin;
            let v = half[t].origin;
            let k = nodes[v].out.len();
            let i = rot_index[t];
            half[h].next = nodes[v].out[(i + k - 1) % k];
        }

        // Components over nodes.
        let mut comp_uf = UnionFind((0..nodes.len()).collect());
        for h in &half {
            comp_uf.union(h.origin, half[h.twin].origin);
        }
        let mut comp_id = vec![usize::MAX; nodes.len()];
        let mut component_count = 0;
        for v in 0..nodes.len() {
            let r = comp_uf.find(v);
            if comp_id[r] == usize::MAX {
                comp_id[r] = component_count;
                component_count += 1;
            }
            nodes[v].component = comp_id[r];
        }

        // Trace cycles.
        let mut cycles: Vec<Cycle> = Vec::new();
        for h0 in 0..half.len() {
            if half[h0].cycle != usize::MAX {
                continue;
            }
            let c = cycles.len();
            let mut h = h0;
            let mut len = 0;
            loop {
                half[h].cycle = c;
                len += 1;
                h = half[h].next;
                if h == h0 {
                    break;
                }
            }
            cycles.push(Cycle {
                start: h0,
                len,
                face: usize::MAX,
                outer: false,
                component: nodes[half[h0].origin].component,
            });
        }

        let mut sub = PlanarSubdivision {
            points: points.to_vec(),
            edges: edges.to_vec(),
            dirs,
            nodes,
            half,
            cycles,
            edge_nodes,
            edge_subs,
            face_count: 0,
            isolated_face: Vec::new(),
            component_count,
        };
        sub.assign_faces()?;
        Ok(sub)
    }

    fn assign_faces(&mut self) -> Result<(), ArrangementError> {
        let cc = self.component_count;
        // Lexicographically largest node of every component.
        let mut top: Vec<Option<NodeId>> = vec![None; cc];
        for v in 0..self.nodes.len() {
            let c = self.nodes[v].component;
            let better = match top[c] {
                None => true,
                Some(u) => self.nodes[v].pos.cmp_lex(&self.nodes[u].pos) == Ordering::Greater,
            };
            if better {
                top[c] = Some(v);
            }
        }
        // Outer cycle: the wedge containing +x at the top node.
        let mut outer_of: Vec<Option<usize>> = vec![None; cc];
        for c in 0..cc {
            let v = top[c].unwrap();
            if let Some(&h) = self.nodes[v].out.last() {
                let cy = self.half[h].cycle;
                self.cycles[cy].outer = true;
                outer_of[c] = Some(cy);
            }
        }
        let mut next_face = 1;
        for cy in &mut self.cycles {
            if !cy.outer {
                cy.face = next_face;
                next_face += 1;
            }
        }
        self.face_count = next_face;
        // Place every component into the innermost bounded cycle of
        // another component that encloses it.
        let mut comp_face = vec![UNBOUNDED; cc];
        for c in 0..cc {
            let p = self.nodes[top[c].unwrap()].pos.clone();
            if let Some(cy) = self.innermost_cycle(&p, Some(c)) {
                comp_face[c] = self.cycles[cy].face;
            }
        }
        for c in 0..cc {
            if let Some(cy) = outer_of[c] {
                self.cycles[cy].face = comp_face[c];
            }
        }
        self.isolated_face =
            self.nodes.iter().map(|nd| if nd.out.is_empty() { Some(comp_face[nd.component]) } else { None }).collect();

        let v = self.nodes.len();
        let e = self.half.len() / 2;
        let f = self.face_count;
        if v + f != e + 1 + cc {
            return Err(ArrangementError::Euler { v, e, f, c: cc });
        }
        Ok(())
    }

    /// Node positions along a cycle.
    pub fn cycle_nodes(&self, cy: usize) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.cycles[cy].len);
        let start = self.cycles[cy].start;
        let mut h = start;
        loop {
            out.push(self.half[h].origin);
            h = self.half[h].next;
            if h == start {
                break;
            }
        }
        out
    }

    pub fn cycle_half_edges(&self, cy: usize) -> Vec<HalfId> {
        let mut out = Vec::with_capacity(self.cycles[cy].len);
        let start = self.cycles[cy].start;
        let mut h = start;
        loop {
            out.push(h);
            h = self.half[h].next;
            if h == start {
                break;
            }
        }
        out
    }

    /// Winding number of `p` (not on the cycle) around cycle `cy`.
    fn winding(&self, p: &HPoint<S>, cy: usize) -> i32 {
        let ns = self.cycle_nodes(cy);
        let mut w = 0;
        for i in 0..ns.len() {
            let a = &self.nodes[ns[i]].pos;
            let b = &self.nodes[ns[(i + 1) % ns.len()]].pos;
            if a.cmp_y(p) != Ordering::Greater {
                if b.cmp_y(p) == Ordering::Greater && h_orientation(a, b, p) > 0 {
                    w += 1;
                }
            } else if b.cmp_y(p) != Ordering::Greater && h_orientation(a, b, p) < 0 {
                w -= 1;
            }
        }
        w
    }

    /// Innermost bounded (non-outer) cycle enclosing `p`, ignoring the
    /// cycles of component `skip`.
    fn innermost_cycle(&self, p: &HPoint<S>, skip: Option<usize>) -> Option<usize> {
        let containing: Vec<usize> = (0..self.cycles.len())
            .filter(|&cy| {
                let c = &self.cycles[cy];
                !c.outer && Some(c.component) != skip && self.winding(p, cy) != 0
            })
            .collect();
        containing.iter().copied().find(|&cy| {
            let probe = &self.nodes[self.half[self.cycles[cy].start].origin].pos;
            containing.iter().all(|&other| other == cy || self.winding(probe, other) != 0)
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn sub_edge_count(&self) -> usize {
        self.half.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn bounded_face_count(&self) -> usize {
        self.face_count - 1
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn face_of_half(&self, h: HalfId) -> FaceId {
        self.cycles[self.half[h].cycle].face
    }

    /// Forward half-edges of the sub-edges of drawing edge `e`, in order.
    pub fn sub_edges_of(&self, e: usize) -> &[HalfId] {
        &self.edge_subs[e]
    }

    /// Node parameters along drawing edge `e`, both endpoints included.
    pub fn edge_params(&self, e: usize) -> &[(Param<S>, NodeId)] {
        &self.edge_nodes[e]
    }

    /// True when the sub-edge of `h` has the unbounded face on a side.
    pub fn borders_unbounded(&self, h: HalfId) -> bool {
        self.face_of_half(h) == UNBOUNDED || self.face_of_half(self.half[h].twin) == UNBOUNDED
    }

    /// Node of original vertex `v`.
    pub fn vertex_node(&self, v: usize) -> NodeId {
        v
    }

    /// True when vertex `v` lies on the closure of the unbounded face.
    pub fn vertex_on_unbounded(&self, v: usize) -> bool {
        let node = &self.nodes[v];
        match self.isolated_face[v] {
            Some(f) => f == UNBOUNDED,
            None => node.out.iter().any(|&h| self.face_of_half(h) == UNBOUNDED),
        }
    }

    pub(crate) fn dir_of(&self, h: HalfId) -> (S, S) {
        let he = &self.half[h];
        let d = &self.dirs[he.edge];
        if he.forward {
            d.clone()
        } else {
            (d.0.negated(), d.1.negated())
        }
    }

    /// Outer boundary walk of the component containing vertex `v`
    /// (half-edges with the exterior on their left).
    pub fn outer_walk(&self, v: usize) -> Option<Vec<HalfId>> {
        let c = self.nodes[v].component;
        let cy = (0..self.cycles.len()).find(|&cy| self.cycles[cy].outer && self.cycles[cy].component == c)?;
        Some(self.cycle_half_edges(cy))
    }

    pub fn node_approx(&self, v: NodeId) -> (f64, f64) {
        self.nodes[v].pos.approx()
    }

    /// JSON dump of nodes, sub-edges and face cycles for debugging.
    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, nd)| {
                let (x, y) = nd.pos.approx();
                serde_json::json!({
                    "id": i,
                    "kind": match nd.kind { NodeKind::Vertex(v) => format!("vertex {v}"), NodeKind::Crossing => "crossing".into() },
                    "x": x,
                    "y": y,
                    "component": nd.component,
                })
            })
            .collect();
        let subs: Vec<serde_json::Value> = (0..self.half.len())
            .step_by(2)
            .map(|h| {
                serde_json::json!({
                    "from": self.half[h].origin,
                    "to": self.half[h + 1].origin,
                    "edge": self.half[h].edge,
                    "left_face": self.face_of_half(h),
                    "right_face": self.face_of_half(h + 1),
                })
            })
            .collect();
        let cycles: Vec<serde_json::Value> = (0..self.cycles.len())
            .map(|cy| {
                serde_json::json!({
                    "face": self.cycles[cy].face,
                    "outer": self.cycles[cy].outer,
                    "nodes": self.cycle_nodes(cy),
                })
            })
            .collect();
        serde_json::json!({
            "unbounded_face": UNBOUNDED,
            "faces": self.face_count,
            "components": self.component_count,
            "nodes": nodes,
            "sub_edges": subs,
            "cycles": cycles,
        })
    }
}

/// For collinear segments `ab` and `cd`: do they share more than a point?
fn collinear_overlap<S: Scalar>(a: &Point<S>, _b: &Point<S>, c: &Point<S>, d: &Point<S>, r: &(S, S)) -> bool {
    let proj = |p: &Point<S>| {
        let (x, y) = p.sub(a);
        dot(&x, &y, &r.0, &r.1)
    };
    let len = dot(&r.0, &r.1, &r.0, &r.1);
    let (mut lo, mut hi) = (proj(c), proj(d));
    if lo.cmp_exact(&hi) == Ordering::Greater {
        std::mem::swap(&mut lo, &mut hi);
    }
    // Overlap of [0, len] and [lo, hi] has positive length.
    let zero = len.zero_like();
    let left = if lo.cmp_exact(&zero) == Ordering::Greater { lo } else { zero };
    let right = if hi.cmp_exact(&len) == Ordering::Less { hi } else { len };
    left.cmp_exact(&right) == Ordering::Less
}

#[cfg(test)]
mod tests;
