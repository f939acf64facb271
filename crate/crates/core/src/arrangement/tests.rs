use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::geom::{int, rat, regular_placement, Coords, CycloReal, Rat};
use crate::graph::CircularOrder;

fn pts(c: &[(i64, i64)]) -> Vec<Point<Rat>> {
    c.iter().map(|&(x, y)| Point::new(int(x), int(y))).collect()
}

fn triangle() -> PlanarSubdivision<Rat> {
    PlanarSubdivision::build(&pts(&[(0, 0), (4, 0), (0, 4)]), &[(0, 1), (1, 2), (2, 0)]).unwrap()
}

#[test]
fn crossing_pair_has_no_bounded_face() {
    let s = PlanarSubdivision::build(&pts(&[(0, 0), (2, 2), (0, 2), (2, 0)]), &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(s.node_count(), 5);
    assert_eq!(s.sub_edge_count(), 4);
    assert_eq!(s.bounded_face_count(), 0);
    assert_eq!(s.cycles.len(), 1);
}

#[test]
fn triangle_faces_and_points() {
    let s = triangle();
    assert_eq!(s.face_count(), 2);
    assert_eq!(s.node_count() - s.sub_edge_count() + s.face_count(), 2);
    assert!(matches!(s.classify_point(&Point::new(rat(4, 3), rat(4, 3))), Location::Face(f) if f != UNBOUNDED));
    assert_eq!(s.classify_point(&Point::new(int(10), int(10))), Location::Face(UNBOUNDED));
    assert!(matches!(s.classify_point(&Point::new(int(2), int(0))), Location::Edge(_)));
    assert_eq!(s.classify_point(&Point::new(int(0), int(0))), Location::Node(0));
    for v in 0..3 {
        assert!(s.vertex_on_unbounded(v));
    }
}

#[test]
fn convex_k4_has_one_crossing() {
    let p = pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let s = PlanarSubdivision::build(&p, &edges).unwrap();
    assert_eq!(s.node_count(), 5);
    assert_eq!(s.bounded_face_count(), 4);
    assert!(s.nodes.iter().any(|n| n.kind == NodeKind::Crossing));
    // Each bounded face is one of the four small triangles.
    let probes = [(1, 0), (2, 1), (1, 2), (0, 1)];
    let mut faces: Vec<FaceId> = probes
        .iter()
        .map(|&(x, y)| {
            let q = Point::new(Rat::new(x.into(), 1.into()), Rat::new(y.into(), 1.into()));
            let c = Point::new(int(1), int(1));
            s.face_of_point(&Point::new((&q.x * rat(3, 4)) + &c.x * rat(1, 4), (&q.y * rat(3, 4)) + &c.y * rat(1, 4)))
                .unwrap()
        })
        .collect();
    faces.sort_unstable();
    faces.dedup();
    assert_eq!(faces.len(), 4);
    assert!(!faces.contains(&UNBOUNDED));
}

#[test]
fn collinear_overlap_is_rejected() {
    let p = pts(&[(0, 0), (2, 0), (1, 0), (3, 0)]);
    assert_eq!(PlanarSubdivision::build(&p, &[(0, 1), (2, 3)]).unwrap_err(), ArrangementError::CollinearOverlap(0, 1));
    let p = pts(&[(0, 0), (1, 0), (2, 0)]);
    // Sharing an endpoint and pointing the same way also overlaps.
    assert!(PlanarSubdivision::build(&p, &[(0, 2), (0, 1)]).is_err());
    // Collinear but only touching at a vertex is fine.
    assert!(PlanarSubdivision::build(&p, &[(0, 1), (1, 2)]).is_ok());
}

#[test]
fn vertex_on_edge_splits_it() {
    let p = pts(&[(0, 0), (4, 0), (2, 0), (2, 3)]);
    let s = PlanarSubdivision::build(&p, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(s.node_count(), 4);
    assert_eq!(s.sub_edge_count(), 3);
}

#[test]
fn triangle_contacts() {
    let s = triangle();
    let inside = Point::new(int(1), int(1));
    let outside = Point::new(int(5), int(5));
    let c = s.segment_outer_contact(&inside, &outside).unwrap();
    assert!(c.meets_open_outer);
    let (_, w) = c.outer_witness.unwrap();
    assert_eq!(s.face_of_point(&w), Some(UNBOUNDED));
    let p = s.points();
    let c = s.segment_outer_contact(&p[0], &p[1]).unwrap();
    assert!(!c.meets_open_outer && c.boundary_contact);
    // Half of an edge from a free point on it.
    let c = s.segment_outer_contact(&Point::new(int(2), int(0)), &p[1]).unwrap();
    assert!(!c.meets_open_outer && c.boundary_contact);
}

#[test]
fn nested_components() {
    // Big square with a small triangle inside and an isolated point inside.
    let p = pts(&[(0, 0), (10, 0), (10, 10), (0, 10), (4, 4), (6, 4), (5, 6), (2, 8), (20, 20)]);
    let e = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 4)];
    let s = PlanarSubdivision::build(&p, &e).unwrap();
    assert_eq!(s.component_count(), 4);
    assert_eq!(s.face_count(), 3);
    assert!(!s.vertex_on_unbounded(4));
    assert!(!s.vertex_on_unbounded(7));
    assert!(s.vertex_on_unbounded(8));
    assert!(s.vertex_on_unbounded(0));
    // Ring region between square and triangle is one face.
    let f1 = s.face_of_point(&Point::new(int(1), int(1))).unwrap();
    let f2 = s.face_of_point(&Point::new(int(7), int(7))).unwrap();
    assert_eq!(f1, f2);
    let inner = s.face_of_point(&Point::new(int(5), int(5))).unwrap();
    assert_ne!(inner, f1);
    let c = s.segment_outer_contact(&p[4], &p[7]).unwrap();
    assert!(!c.meets_open_outer);
}

#[test]
fn hexagon_center_is_only_touched() {
    // Wheel on six vertices drawn on a regular hexagon with the hub inside
    // is not expressible; instead: three main diagonals plus the hull, and
    // a query along a diagonal's line through the center node.
    let order = CircularOrder::identity(6);
    let pl = regular_placement(&order).unwrap();
    let Coords::Cyclo(p) = pl.coords else { panic!() };
    let edges = [(0, 3), (1, 4), (2, 5), (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];
    let s = PlanarSubdivision::build(&p, &edges[..3]).unwrap();
    assert_eq!(s.node_count(), 7);
    assert_eq!(s.sub_edge_count(), 6);
    let full = PlanarSubdivision::build(&p, &edges).unwrap();
    assert_eq!(full.bounded_face_count(), 6);
    // Without the diagonal 0-3 the segment 0-3 only touches the center node.
    let mut e2 = edges.to_vec();
    e2.remove(0);
    let s2 = PlanarSubdivision::build(&p, &e2).unwrap();
    let c = s2.segment_outer_contact(&p[0], &p[3]).unwrap();
    assert!(!c.meets_open_outer);
    assert_eq!(c.pieces.len(), 2);
    let _ = CycloReal::zero(12);
}

/// Oracle: points joined by a segment that avoids the drawing share a
/// face, and far-away points are in the unbounded face.
#[test]
fn random_drawings_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(3..9);
        let p: Vec<Point<Rat>> =
            (0..n).map(|_| Point::new(int(rng.gen_range(0..12)), int(rng.gen_range(0..12)))).collect();
        if (0..n).any(|i| (i + 1..n).any(|j| p[i] == p[j])) {
            continue;
        }
        let mut edges = Vec::new();
        for _ in 0..rng.gen_range(1..9) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && !edges.contains(&(a.min(b), a.max(b))) {
                edges.push((a.min(b), a.max(b)));
            }
        }
        let Ok(s) = PlanarSubdivision::build(&p, &edges) else { continue };
        checked += 1;
        let samples: Vec<Point<Rat>> =
            (0..100).map(|_| Point::new(rat(rng.gen_range(-20..260), 20), rat(rng.gen_range(-20..260), 20))).collect();
        let faces: Vec<Option<FaceId>> = samples.iter().map(|q| s.face_of_point(q)).collect();
        let far = Point::new(int(100), int(-50));
        assert_eq!(s.face_of_point(&far), Some(UNBOUNDED));
        for i in 0..samples.len() {
            let Some(fi) = faces[i] else { continue };
            let c = s.segment_pieces(&samples[i], &far).unwrap();
            assert_eq!(c[0].site, PieceSite::Face(fi));
            for j in i + 1..samples.len() {
                let Some(fj) = faces[j] else { continue };
                if samples[i] == samples[j] {
                    continue;
                }
                let pieces = s.segment_pieces(&samples[i], &samples[j]).unwrap();
                if pieces.len() == 1 {
                    assert_eq!(fi, fj, "free segment joins different faces");
                }
                assert_eq!(pieces[0].site, PieceSite::Face(fi));
                assert_eq!(
                    pieces.last().unwrap().site,
                    {
                        let back = s.segment_pieces(&samples[j], &samples[i]).unwrap();
                        back[0].site
                    }
                    .clone()
                    .eq(&PieceSite::Face(fj))
                    .then_some(pieces.last().unwrap().site)
                    .unwrap_or(PieceSite::Face(fj))
                );
            }
        }
        // Subdividing a segment does not change outer contact.
        let (a, b) = (&samples[0], &samples[1]);
        if a != b {
            let mid = a.lerp(b, &rat(1, 2));
            let whole = s.segment_outer_contact(a, b).unwrap().meets_open_outer;
            let halves = s.segment_outer_contact(a, &mid).unwrap().meets_open_outer
                || s.segment_outer_contact(&mid, b).unwrap().meets_open_outer;
            assert_eq!(whole, halves);
        }
    }
}
