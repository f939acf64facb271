use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{angle_cmp, ArrangementError, FaceId, HPoint, HalfId, NodeId, Param, PlanarSubdivision, UNBOUNDED};
use crate::geom::{cross, dot, orientation, Point, Rat, Scalar};

/// Exact location of a point in a subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Node(NodeId),
    /// Interior of the sub-edge with this forward half-edge.
    Edge(HalfId),
    Face(FaceId),
}

/// Where an open piece of a query segment lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceSite {
    Face(FaceId),
    /// Along the sub-edge of this half-edge.
    OnEdge(HalfId),
}

/// Open piece `(lo, hi)` of a query segment between consecutive cuts.
#[derive(Clone, Debug)]
pub struct Piece<S> {
    pub lo: Param<S>,
    pub hi: Param<S>,
    pub site: PieceSite,
}

impl<S: Scalar> Piece<S> {
    /// A dyadic parameter strictly inside the piece.
    pub fn witness_param(&self) -> Rat {
        let like = &self.lo.num;
        let half = Rat::new(1.into(), 2.into());
        let (mut l, mut h) = (Rat::zero(), Rat::one());
        loop {
            let mid = (&l + &h) * &half;
            let q = Param { num: like.from_rat_like(&mid), den: like.one_like() };
            if q.cmp(&self.lo) != Ordering::Greater {
                l = mid;
            } else if q.cmp(&self.hi) != Ordering::Less {
                h = mid;
            } else {
                return mid;
            }
        }
    }
}

/// Result of cutting a segment against a subdivision.
#[derive(Clone, Debug)]
pub struct ContactReport<S> {
    /// Some open piece lies in the unbounded face.
    pub meets_open_outer: bool,
    /// Some piece runs along a sub-edge bordering the unbounded face.
    pub boundary_contact: bool,
    /// Parameter and point of a piece in the unbounded face.
    pub outer_witness: Option<(Rat, Point<S>)>,
    /// A sub-edge (forward half-edge) on the outer boundary touched along a piece.
    pub boundary_witness: Option<HalfId>,
    pub pieces: Vec<Piece<S>>,
}

impl<S: Scalar> PlanarSubdivision<S> {
    /// Location of parameter `t` (strictly inside or at the ends) on edge `e`.
    pub(crate) fn locate_on_edge(&self, e: usize, t: &Param<S>) -> Location {
        let list = &self.edge_nodes[e];
        let mut lo = 0usize;
        let mut hi = list.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match list[mid].0.cmp(t) {
                Ordering::Less => lo = mid + 1,
                Ordering::Equal => return Location::Node(list[mid].1),
                Ordering::Greater => hi = mid,
            }
        }
        debug_assert!(lo >= 1 && lo < list.len());
        Location::Edge(self.edge_subs[e][lo - 1])
    }

    /// Face of the wedge at node `v` containing direction `d`, or the
    /// half-edge leaving `v` exactly in direction `d`.
    pub(crate) fn wedge(&self, v: NodeId, d: &(S, S)) -> PieceSite {
        let out = &self.nodes[v].out;
        if out.is_empty() {
            return PieceSite::Face(self.isolated_face[v].unwrap_or(UNBOUNDED));
        }
        let k = out.len();
        let i = out.iter().position(|&h| angle_cmp(&self.dir_of(h), d) != Ordering::Less).unwrap_or(k);
        if i < k && angle_cmp(&self.dir_of(out[i]), d) == Ordering::Equal {
            return PieceSite::OnEdge(out[i]);
        }
        PieceSite::Face(self.face_of_half(out[(i + k - 1) % k]))
    }

    fn site_from(&self, loc: Location, d: &(S, S)) -> PieceSite {
        match loc {
            Location::Face(f) => PieceSite::Face(f),
            Location::Node(v) => self.wedge(v, d),
            Location::Edge(h) => {
                let e = self.dir_of(h);
                match cross(&e.0, &e.1, &d.0, &d.1).sign() {
                    1 => PieceSite::Face(self.face_of_half(h)),
                    -1 => PieceSite::Face(self.face_of_half(self.half[h].twin)),
                    _ => PieceSite::OnEdge(h),
                }
            }
        }
    }

    /// Exact location of `x`.
    pub fn classify_point(&self, x: &Point<S>) -> Location {
        for (v, p) in self.points.iter().enumerate() {
            if p == x {
                return Location::Node(v);
            }
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (pa, pb) = (&self.points[a], &self.points[b]);
            if orientation(pa, pb, x) != 0 {
                continue;
            }
            let (wx, wy) = x.sub(pa);
            let r = &self.dirs[e];
            let t = dot(&wx, &wy, &r.0, &r.1);
            let len = dot(&r.0, &r.1, &r.0, &r.1);
            if t.sign() > 0 && t.cmp_exact(&len) == Ordering::Less {
                return self.locate_on_edge(e, &Param::new(t, len));
            }
        }
        let h = HPoint::affine(x);
        match self.innermost_cycle(&h, None) {
            Some(cy) => Location::Face(self.cycles[cy].face),
            None => Location::Face(UNBOUNDED),
        }
    }

    /// Face id of `x`, or `None` when `x` lies on the drawing.
    pub fn face_of_point(&self, x: &Point<S>) -> Option<FaceId> {
        match self.classify_point(x) {
            Location::Face(f) => Some(f),
            _ => None,
        }
    }

    /// Cuts the closed segment `pr` at every contact with the drawing and
    /// locates each open piece.
    pub fn segment_pieces(&self, p: &Point<S>, r: &Point<S>) -> Result<Vec<Piece<S>>, ArrangementError> {
        if p == r {
            return Err(ArrangementError::DegenerateSegment);
        }
        let d = r.sub(p);
        let len2 = dot(&d.0, &d.1, &d.0, &d.1);
        let mut cuts: Vec<(Param<S>, Location)> = Vec::new();
        for (w, pw) in self.points.iter().enumerate() {
            if orientation(p, r, pw) != 0 {
                continue;
            }
            let (wx, wy) = pw.sub(p);
            let t = dot(&wx, &wy, &d.0, &d.1);
            if t.sign() >= 0 && t.cmp_exact(&len2) != Ordering::Greater {
                cuts.push((Param::new(t, len2.clone()), Location::Node(w)));
            }
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (pa, pb) = (&self.points[a], &self.points[b]);
            let o1 = orientation(p, r, pa);
            let o2 = orientation(p, r, pb);
            if o1 == 0 || o2 == 0 || o1 == o2 {
                continue;
            }
            let o3 = orientation(pa, pb, p);
            let o4 = orientation(pa, pb, r);
            if o3 != 0 && o3 == o4 {
                continue;
            }
            let re = &self.dirs[e];
            let (wx, wy) = pa.sub(p);
            let den = cross(&d.0, &d.1, &re.0, &re.1);
            let u = Param::new(cross(&wx, &wy, &re.0, &re.1), den.clone());
            let t = Param::new(cross(&wx, &wy, &d.0, &d.1), den);
            cuts.push((u, self.locate_on_edge(e, &t)));
        }
        cuts.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| rank(&x.1).cmp(&rank(&y.1))));
        let like = &d.0;
        let mut stops: Vec<(Param<S>, Location)> = Vec::new();
        let zero = Param::zero(like);
        if cuts.first().map(|c| c.0.cmp(&zero)) != Some(Ordering::Equal) {
            stops.push((zero, self.classify_point(p)));
        }
        for (u, loc) in cuts {
            if stops.last().map(|s| s.0.cmp(&u)) != Some(Ordering::Equal) {
                stops.push((u, loc));
            }
        }
        let one = Param::one(like);
        if stops.last().map(|s| s.0.cmp(&one)) != Some(Ordering::Equal) {
            stops.push((one, Location::Face(UNBOUNDED)));
        }
        let mut pieces = Vec::with_capacity(stops.len() - 1);
        for w in stops.windows(2) {
            pieces.push(Piece { lo: w[0].0.clone(), hi: w[1].0.clone(), site: self.site_from(w[0].1, &d) });
        }
        Ok(pieces)
    }

    /// Does the open segment `pr` meet the unbounded face, and does it run
    /// along the outer boundary?
    pub fn segment_outer_contact(&self, p: &Point<S>, r: &Point<S>) -> Result<ContactReport<S>, ArrangementError> {
        let pieces = self.segment_pieces(p, r)?;
        let mut report = ContactReport {
            meets_open_outer: false,
            boundary_contact: false,
            outer_witness: None,
            boundary_witness: None,
            pieces: Vec::new(),
        };
        for piece in &pieces {
            match piece.site {
                PieceSite::Face(f) if f == UNBOUNDED => {
                    report.meets_open_outer = true;
                    if report.outer_witness.is_none() {
                        let q = piece.witness_param();
                        let x = p.lerp(r, &q);
                        report.outer_witness = Some((q, x));
                    }
                }
                PieceSite::OnEdge(h) if self.borders_unbounded(h) => {
                    report.boundary_contact = true;
                    if report.boundary_witness.is_none() {
                        report.boundary_witness = Some(h & !1);
                    }
                }
                _ => {}
            }
        }
        report.pieces = pieces;
        Ok(report)
    }
}

/// Nodes first, so coincident cuts resolve to the node.
fn rank(l: &Location) -> u8 {
    match l {
        Location::Node(_) => 0,
        Location::Edge(_) => 1,
        Location::Face(_) => 2,
    }
}
