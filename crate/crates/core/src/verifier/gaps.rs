use std::time::Instant;

use rayon::prelude::*;

use super::{
    check_sizes, empty_report, fill_side_conditions, on_points, record_non_edge, VerificationReport, VerifyError,
};
use crate::arrangement::{PieceSite, PlanarSubdivision};
use crate::geom::{orientation, Placement, Point, Scalar};
use crate::graph::{CircularOrder, Graph};

/// Clockwise hull order starting at vertex 0, if the points are in strictly
/// convex position.
pub fn convex_order<S: Scalar>(p: &[Point<S>]) -> Result<CircularOrder, VerifyError> {
    let n = p.len();
    if n <= 2 {
        return Ok(CircularOrder::identity(n));
    }
    let mut seq = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    let mut cur = 0;
    for step in 0..n {
        let next =
            (0..n).find(|&w| w != cur && (0..n).all(|x| x == cur || x == w || orientation(&p[cur], &p[w], &p[x]) < 0));
        let Some(w) = next else {
            return Err(VerifyError::NotConvex(format!("no hull successor for vertex {cur}")));
        };
        if step == n - 1 {
            if w != 0 {
                return Err(VerifyError::NotConvex("hull walk does not close".into()));
            }
            break;
        }
        if used[w] {
            return Err(VerifyError::NotConvex(format!("vertex {w} repeats on the hull walk")));
        }
        used[w] = true;
        seq.push(w);
        cur = w;
    }
    Ok(CircularOrder::new(seq).expect("hull walk is a permutation"))
}

/// Same verdict as `verify_oor` for convex placements, testing each
/// non-edge against the gap regions only.
pub fn verify_convex_gaps(g: &Graph, pl: &Placement) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    check_sizes(g, pl)?;
    let mut report = on_points!(pl, |p| gap_points(g, p)?);
    report.mode = pl.mode_name().to_string();
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn gap_points<S: Scalar>(g: &Graph, p: &[Point<S>]) -> Result<VerificationReport, VerifyError> {
    let order = convex_order(p)?;
    let n = g.n();
    let gaps: Vec<(usize, usize)> =
        (0..n).map(|i| (order.at(i), order.at((i + 1) % n))).filter(|&(v, w)| v != w && !g.has_edge(v, w)).collect();
    let edges = g.edges();
    // Per gap: the subdivision of g + gap, the gap's sub-edge and the face
    // on the hull-interior (right) side of the clockwise gap.
    let regions: Vec<_> = gaps
        .par_iter()
        .map(|&(v, w)| {
            let mut es = edges.clone();
            es.push((v, w));
            let sub = PlanarSubdivision::build(p, &es)?;
            let h = sub.sub_edges_of(es.len() - 1)[0];
            let face = sub.face_of_half(sub.half[h].twin);
            Ok((sub, h, face))
        })
        .collect::<Result<_, VerifyError>>()?;
    let mut report = empty_report(n, "gap-regions");
    let results: Vec<_> = g
        .non_edges()
        .into_par_iter()
        .map(|(u, v)| {
            for (sub, h, face) in &regions {
                let pieces = sub.segment_pieces(&p[u], &p[v])?;
                let (h, face) = (*h, *face);
                // Either half of the gap's sub-edge counts.
                let hit = move |s: PieceSite| match s {
                    PieceSite::Face(f) => f == face,
                    PieceSite::OnEdge(x) => x / 2 == h / 2,
                };
                if pieces.iter().any(|pc| hit(pc.site)) {
                    return Ok((u, v, pieces, Some(hit)));
                }
            }
            Ok((u, v, Vec::new(), None))
        })
        .collect::<Result<_, VerifyError>>()?;
    for (u, v, pieces, hit) in results {
        match hit {
            Some(hit) => record_non_edge(&mut report, p, u, v, &pieces, hit),
            None => record_non_edge(&mut report, p, u, v, &pieces, |_| false),
        }
    }
    if !report.failures.is_empty() {
        for f in &mut report.failures {
            f.reason = "meets no gap region".into();
        }
    }
    let sub = PlanarSubdivision::build(p, &edges)?;
    fill_side_conditions(&mut report, g, &sub);
    Ok(report)
}
