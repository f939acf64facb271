//! Exact OOR verification and the side conditions around it.

mod cnp;
mod gaps;
mod obstacle;

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::arrangement::{ArrangementError, Piece, PieceSite, PlanarSubdivision, UNBOUNDED};
use crate::geom::{format_rat, GeomError, Placement, Point, Rat, Scalar};
use crate::graph::Graph;

pub use cnp::{check_cnp, CnpInterval, CnpReport};
pub use gaps::{convex_order, verify_convex_gaps};
pub use obstacle::{materialize_obstacle, point_in_polygon, ObstaclePolygon, PolygonSide};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("placement has {placement} points but the graph has {graph} vertices")]
    SizeMismatch { graph: usize, placement: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("placement is not in convex position: {0}")]
    NotConvex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("restricted drawing is not an OOR: {0}")]
    ContractViolated(String),
    #[error("obstacle construction failed: {0}")]
    Obstacle(String),
}

/// Runs `$body` with `$p` bound to the placement's points in either mode.
macro_rules! on_points {
    ($pl:expr, |$p:ident| $body:expr) => {
        match &$pl.coords {
            $crate::geom::Coords::Rational($p) => $body,
            $crate::geom::Coords::Cyclo($p) => $body,
        }
    };
}
pub(crate) use on_points;

/// A non-edge whose open segment misses the outer face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonEdgeFailure {
    pub u: usize,
    pub v: usize,
    pub reason: String,
}

/// Point `u + t (v - u)` of the non-edge `uv` in the outer face.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterWitness {
    pub u: usize,
    pub v: usize,
    pub t: Rat,
    pub x: String,
    pub y: String,
}

/// Point `u + t (v - u)` of the edge `uv` on a sub-edge bordering the outer face.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryWitness {
    pub u: usize,
    pub v: usize,
    pub t: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub valid: bool,
    pub n: usize,
    pub mode: String,
    /// `"arrangement"` or `"gap-regions"`.
    pub method: String,
    pub failures: Vec<NonEdgeFailure>,
    pub witnesses: Vec<OuterWitness>,
    pub reducible: bool,
    pub boundary_witnesses: Vec<BoundaryWitness>,
    /// Edges with no sub-edge on the outer face.
    pub inner_edges: Vec<(usize, usize)>,
    pub vertices_on_outer_face: bool,
    pub inner_vertices: Vec<usize>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "valid": self.valid,
            "n": self.n,
            "mode": self.mode,
            "method": self.method,
            "failures": self.failures.iter().map(|f| json!({"u": f.u, "v": f.v, "reason": f.reason})).collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(|w| json!({"u": w.u, "v": w.v, "t": format_rat(&w.t), "x": w.x, "y": w.y})).collect::<Vec<_>>(),
            "reducible": self.reducible,
            "boundary_witnesses": self.boundary_witnesses.iter().map(|w| json!({"u": w.u, "v": w.v, "t": format_rat(&w.t)})).collect::<Vec<_>>(),
            "inner_edges": self.inner_edges,
            "vertices_on_outer_face": self.vertices_on_outer_face,
            "inner_vertices": self.inner_vertices,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }
}

pub(crate) fn check_sizes(g: &Graph, pl: &Placement) -> Result<(), VerifyError> {
    if g.n() != pl.n() {
        return Err(VerifyError::SizeMismatch { graph: g.n(), placement: pl.n() });
    }
    on_points!(pl, |p| {
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] == p[j] {
                    return Err(GeomError::DuplicatePoint(i, j).into());
                }
            }
        }
    });
    Ok(())
}

/// Decides whether `pl` is an OOR of `g`: every non-edge must meet the
/// open outer face of the planarized drawing.
pub fn verify_oor(g: &Graph, pl: &Placement) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    check_sizes(g, pl)?;
    let mut report = on_points!(pl, |p| verify_points(g, p)?);
    report.mode = pl.mode_name().to_string();
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn empty_report(n: usize, method: &str) -> VerificationReport {
    VerificationReport {
        valid: true,
        n,
        mode: String::new(),
        method: method.to_string(),
        failures: Vec::new(),
        witnesses: Vec::new(),
        reducible: true,
        boundary_witnesses: Vec::new(),
        inner_edges: Vec::new(),
        vertices_on_outer_face: true,
        inner_vertices: Vec::new(),
        elapsed_ms: 0.0,
    }
}

fn verify_points<S: Scalar>(g: &Graph, p: &[Point<S>]) -> Result<VerificationReport, VerifyError> {
    let sub = PlanarSubdivision::build(p, &g.edges())?;
    let mut report = empty_report(g.n(), "arrangement");
    let results: Vec<_> = g
        .non_edges()
        .into_par_iter()
        .map(|(u, v)| sub.segment_pieces(&p[u], &p[v]).map(|pieces| (u, v, pieces)))
        .collect::<Result<_, _>>()?;
    for (u, v, pieces) in results {
        record_non_edge(&mut report, p, u, v, &pieces, |s| s == PieceSite::Face(UNBOUNDED));
    }
    fill_side_conditions(&mut report, g, &sub);
    Ok(report)
}

/// Adds the outcome for non-edge `uv` given its pieces and a predicate
/// deciding which piece sites lie in the outer face.
pub(crate) fn record_non_edge<S: Scalar>(
    report: &mut VerificationReport,
    p: &[Point<S>],
    u: usize,
    v: usize,
    pieces: &[Piece<S>],
    outer: impl Fn(PieceSite) -> bool,
) {
    if let Some(piece) = pieces.iter().find(|pc| outer(pc.site)) {
        let t = piece.witness_param();
        let x = p[u].lerp(&p[v], &t);
        report.witnesses.push(OuterWitness { u, v, t, x: x.x.exact_string(), y: x.y.exact_string() });
        return;
    }
    let reason = if pieces.iter().all(|pc| matches!(pc.site, PieceSite::OnEdge(_))) {
        "open segment runs along drawn edges"
    } else {
        "open segment stays in bounded faces and on the drawing"
    };
    report.valid = false;
    report.failures.push(NonEdgeFailure { u, v, reason: reason.to_string() });
}

/// Reducibility and vertices-on-outer-face flags from the drawing itself.
pub(crate) fn fill_side_conditions<S: Scalar>(report: &mut VerificationReport, g: &Graph, sub: &PlanarSubdivision<S>) {
    for (e, &(u, v)) in sub.edges().iter().enumerate() {
        let params = sub.edge_params(e);
        let found = sub.sub_edges_of(e).iter().position(|&h| sub.borders_unbounded(h));
        match found {
            Some(i) => {
                let piece = Piece { lo: params[i].0.clone(), hi: params[i + 1].0.clone(), site: PieceSite::OnEdge(0) };
                report.boundary_witnesses.push(BoundaryWitness { u, v, t: piece.witness_param() });
            }
            None => {
                report.reducible = false;
                report.inner_edges.push((u, v));
            }
        }
    }
    for v in 0..g.n() {
        if !sub.vertex_on_unbounded(v) {
            report.vertices_on_outer_face = false;
            report.inner_vertices.push(v);
        }
    }
}

/// Re-checks every outer witness of `report` by exact point location.
pub fn recheck_witnesses(g: &Graph, pl: &Placement, report: &VerificationReport) -> Result<bool, VerifyError> {
    check_sizes(g, pl)?;
    on_points!(pl, |p| {
        let sub = PlanarSubdivision::build(p, &g.edges())?;
        Ok(report.witnesses.iter().all(|w| {
            let x = p[w.u].lerp(&p[w.v], &w.t);
            !g.has_edge(w.u, w.v) && sub.face_of_point(&x) == Some(UNBOUNDED)
        }))
    })
}

/// Edges and vertices to delete from a representation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Deletion {
    pub edges: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Restriction {
    pub graph: Graph,
    pub placement: Placement,
    /// `kept[i]` is the original id of new vertex `i`.
    pub kept: Vec<usize>,
    pub report: VerificationReport,
}

/// Subgraph of a reducible OOR with the inherited placement; the result is
/// re-verified rather than trusted.
pub fn restrict_representation(
    g: &Graph,
    pl: &Placement,
    report: &VerificationReport,
    delete: &Deletion,
) -> Result<Restriction, VerifyError> {
    if report.n != g.n() || !report.valid || !report.reducible {
        return Err(VerifyError::Precondition("input is not a reducible OOR".into()));
    }
    let mut h = g.clone();
    for &(u, v) in &delete.edges {
        if u >= g.n() || v >= g.n() || !h.remove_edge(u, v) {
            return Err(VerifyError::Precondition(format!("{u}-{v} is not an edge")));
        }
    }
    if let Some(&v) = delete.vertices.iter().find(|&&v| v >= g.n()) {
        return Err(VerifyError::Precondition(format!("vertex {v} out of range")));
    }
    let kept: Vec<usize> = (0..g.n()).filter(|v| !delete.vertices.contains(v)).collect();
    let graph = h.induced(&kept);
    let placement = pl.restricted(&kept);
    let report = verify_oor(&graph, &placement)?;
    if !report.valid {
        let f = &report.failures[0];
        return Err(VerifyError::ContractViolated(format!("non-edge {}-{}: {}", f.u, f.v, f.reason)));
    }
    Ok(Restriction { graph, placement, kept, report })
}
