//! SVG drawings. Coordinates are converted to floats for display only.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::geom::Placement;
use crate::graph::Graph;
use crate::verifier::VerificationReport;

const SIZE: f64 = 480.0;
const PAD: f64 = 32.0;

/// Convex hull (counter-clockwise) of display points.
fn hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut h: Vec<(f64, f64)> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &(f64, f64)>> =
            if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0.0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    h
}

/// Draws `g` at `pl`: edges solid, non-edges dashed (red when the report
/// lists them as failing), the outside of the hull shaded, and outer-face
/// witness points marked.
pub fn render_svg(g: &Graph, pl: &Placement, report: Option<&VerificationReport>) -> String {
    let raw = pl.approx_points();
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &(x, y) in &raw {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
    let scale = (SIZE - 2.0 * PAD) / span;
    // SVG's y axis points down.
    let map = |(x, y): (f64, f64)| (PAD + (x - lo.0) * scale, SIZE - PAD - (y - lo.1) * scale);
    let pts: Vec<(f64, f64)> = raw.iter().copied().map(map).collect();
    let failing: Vec<(usize, usize)> = report.map_or(Vec::new(), |r| r.failures.iter().map(|f| (f.u, f.v)).collect());

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    if report.is_some() {
        let _ = writeln!(s, r##"  <rect class="outer" x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#e6e6e6"/>"##);
        let ring: Vec<String> = hull(&pts).iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(s, r##"  <polygon class="hull" points="{}" fill="#ffffff"/>"##, ring.join(" "));
    }
    for (u, v) in g.non_edges() {
        let (a, b) = (pts[u], pts[v]);
        let colour = if failing.contains(&(u, v)) { "#d62728" } else { "#9e9e9e" };
        let _ = writeln!(
            s,
            r#"  <line class="non-edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="1" stroke-dasharray="4 3"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    for (u, v) in g.edges() {
        let (a, b) = (pts[u], pts[v]);
        let _ = writeln!(
            s,
            r##"  <line class="edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f1f1f" stroke-width="1.5"/>"##,
            a.0, a.1, b.0, b.1
        );
    }
    if let Some(r) = report {
        for w in &r.witnesses {
            let t = w.t.to_f64().unwrap_or(0.5);
            let (a, b) = (pts[w.u], pts[w.v]);
            let (x, y) = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
            let _ = writeln!(s, r##"  <circle class="witness" cx="{x:.2}" cy="{y:.2}" r="2.5" fill="#2ca02c"/>"##);
        }
    }
    for (v, &(x, y)) in pts.iter().enumerate() {
        let _ = writeln!(
            s,
            r##"  <circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="6" fill="#1f77b4" stroke="#ffffff" stroke-width="1"/>"##
        );
        let label = g.label(v).map_or_else(|| v.to_string(), xml_escape);
        let _ = writeln!(
            s,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{label}</text>"#,
            x + 8.0,
            y - 8.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::construct_grid_order;
    use crate::geom::regular_placement;
    use crate::graph::{named_graph, CircularOrder, NamedGraph};
    use crate::verifier::verify_oor;

    #[test]
    fn triangle() {
        let g = Graph::complete(3);
        let pl = regular_placement(&CircularOrder::identity(3)).unwrap();
        let svg = render_svg(&g, &pl, None);
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 3);
        assert_eq!(svg.matches(r#"class="edge""#).count(), 3);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn failures_are_highlighted() {
        let c4 = named_graph(&NamedGraph::Cycle(4)).unwrap();
        let pl = regular_placement(&CircularOrder::identity(4)).unwrap();
        let r = verify_oor(&c4, &pl).unwrap();
        assert!(!r.valid);
        let svg = render_svg(&c4, &pl, Some(&r));
        assert_eq!(svg.matches("#d62728").count(), 2);
        assert!(svg.contains(r#"class="hull""#));
        // Rendering leaves the verdict alone.
        let again = verify_oor(&c4, &pl).unwrap();
        assert_eq!((again.valid, again.failures), (r.valid, r.failures));
    }

    #[test]
    fn grid() {
        let g = named_graph(&NamedGraph::Grid(5, 3)).unwrap();
        let pl = regular_placement(&construct_grid_order(5, 3).unwrap()).unwrap();
        let r = verify_oor(&g, &pl).unwrap();
        let svg = render_svg(&g, &pl, Some(&r));
        assert_eq!(svg.matches(r#"class="witness""#).count(), r.witnesses.len());
        assert_eq!(svg.matches(r#"class="non-edge""#).count(), g.non_edges().len());
    }
}
