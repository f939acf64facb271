use crate::graph::{CircularOrder, Graph};

/// Neighbors of `v` occupy the run `first ..= last` of the order read
/// clockwise from the successor of `v` to its predecessor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnpInterval {
    pub v: usize,
    pub first: Option<usize>,
    pub last: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnpReport {
    pub holds: bool,
    /// Interval witnesses for cover vertices with the property.
    pub intervals: Vec<CnpInterval>,
    /// Cover vertices whose neighbors are not consecutive.
    pub violations: Vec<usize>,
    /// Non-edges with no endpoint in the cover.
    pub uncovered: Vec<(usize, usize)>,
}

/// The run of `v`'s neighbors in the order read from `v`'s successor, if
/// they form one run; a run may not wrap around `v` itself.
pub(crate) fn neighbor_interval(g: &Graph, order: &CircularOrder, v: usize) -> Option<CnpInterval> {
    let n = order.len();
    let seq: Vec<usize> = (1..n).map(|i| order.at((order.position(v) + i) % n)).collect();
    let hits: Vec<usize> = (0..seq.len()).filter(|&i| g.has_edge(v, seq[i])).collect();
    match (hits.first(), hits.last()) {
        (Some(&a), Some(&b)) if b - a + 1 == hits.len() => {
            Some(CnpInterval { v, first: Some(seq[a]), last: Some(seq[b]) })
        }
        (Some(_), _) => None,
        _ => Some(CnpInterval { v, first: None, last: None }),
    }
}

/// Do the cover vertices have consecutive neighbors in `order`, and does
/// the cover meet every non-edge?
pub fn check_cnp(g: &Graph, order: &CircularOrder, cover: &[usize]) -> CnpReport {
    assert_eq!(order.len(), g.n(), "order must list every vertex");
    let mut in_cover = vec![false; g.n()];
    for &v in cover {
        in_cover[v] = true;
    }
    let mut report = CnpReport { holds: true, intervals: Vec::new(), violations: Vec::new(), uncovered: Vec::new() };
    for v in (0..g.n()).filter(|&v| in_cover[v]) {
        match neighbor_interval(g, order, v) {
            Some(iv) => report.intervals.push(iv),
            None => report.violations.push(v),
        }
    }
    report.uncovered = g.non_edges().into_iter().filter(|&(u, v)| !in_cover[u] && !in_cover[v]).collect();
    report.holds = report.violations.is_empty() && report.uncovered.is_empty();
    report
}
