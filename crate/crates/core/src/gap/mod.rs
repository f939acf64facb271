//! The gap condition for a fixed circular order, search over canonical
//! orders, the existential CNF encoding, and the catalog harness.

mod catalog;
mod cnf;
mod search;

use serde_json::json;
use thiserror::Error;

use crate::graph::{CircularOrder, Graph};

pub use catalog::{all_graphs, connected_cubic_graphs, run_catalog, CatalogCheck, CatalogOptions, CatalogRecord};
pub use cnf::{encode_cnf, parse_dimacs, solve_clauses, solve_cnf, write_dimacs, CnfInstance, SolveOutcome, VarTag};
pub use search::{
    canonical_orders, search_gap_order, search_regular_order, Budget, SearchOptions, SearchOutcome, SearchStatus,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GapError {
    #[error("{0}-{1} is an edge, not a non-edge")]
    IsEdge(usize, usize),
    #[error("order lists {order} vertices, graph has {graph}")]
    SizeMismatch { graph: usize, order: usize },
    #[error("vertex {0} out of range")]
    BadVertex(usize),
}

/// Which way round the non-edge `xy` (with `x < y`) a gap lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// On `[x, y]`, clockwise from `x`.
    Forward,
    /// On `[y, x]`, clockwise from `y`.
    Backward,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Forward => "forward",
            Side::Backward => "backward",
        }
    }
}

/// Consecutive vertices `a`, then `b` clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gap {
    pub a: usize,
    pub b: usize,
    pub side: Side,
}

/// The first candidate gap found for a non-edge, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapWitness {
    pub x: usize,
    pub y: usize,
    pub gap: Option<Gap>,
}

impl GapWitness {
    /// Re-checks the witness edge by edge against `order`.
    pub fn recheck(&self, g: &Graph, order: &CircularOrder) -> bool {
        let Some(gap) = self.gap else { return false };
        let (s, t) = match gap.side {
            Side::Forward => (self.x, self.y),
            Side::Backward => (self.y, self.x),
        };
        if order.succ(gap.a) != gap.b || g.has_edge(gap.a, gap.b) {
            return false;
        }
        let left = order.closed(s, gap.a);
        let right = order.closed(gap.b, t);
        if left.len() + right.len() != order.distance(s, t) + 1 {
            return false;
        }
        !left.iter().any(|&u| right.iter().any(|&w| g.has_edge(u, w)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapResult {
    pub holds: bool,
    pub witnesses: Vec<GapWitness>,
}

impl GapResult {
    pub fn failing(&self) -> Vec<(usize, usize)> {
        self.witnesses.iter().filter(|w| w.gap.is_none()).map(|w| (w.x, w.y)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "holds": self.holds,
            "witnesses": self.witnesses.iter().map(|w| json!({
                "x": w.x,
                "y": w.y,
                "gap": w.gap.map(|g| json!({"a": g.a, "b": g.b, "side": g.side.as_str()})),
            })).collect::<Vec<_>>(),
        })
    }
}

fn check_order(g: &Graph, order: &CircularOrder) -> Result<(), GapError> {
    if g.n() != order.len() {
        return Err(GapError::SizeMismatch { graph: g.n(), order: order.len() });
    }
    Ok(())
}

/// Cuts `k` (between `arc[k]` and `arc[k + 1]`) spanned by no edge inside
/// the arc; `idx` is scratch indexed by vertex, all `usize::MAX` on entry
/// and on exit.
pub(crate) fn open_cuts(g: &Graph, idx: &mut [usize], arc: &[usize], first_only: bool) -> Vec<usize> {
    for (i, &v) in arc.iter().enumerate() {
        idx[v] = i;
    }
    let mut cuts = Vec::new();
    let mut reach = 0;
    for (k, &v) in arc.iter().enumerate().take(arc.len().saturating_sub(1)) {
        for &w in g.neighbors(v) {
            if idx[w] != usize::MAX && idx[w] > reach {
                reach = idx[w];
            }
        }
        if reach <= k {
            cuts.push(k);
            if first_only {
                break;
            }
        }
    }
    for &v in arc {
        idx[v] = usize::MAX;
    }
    cuts
}

fn side_arc(order: &CircularOrder, x: usize, y: usize, side: Side) -> Vec<usize> {
    match side {
        Side::Forward => order.closed(x, y),
        Side::Backward => order.closed(y, x),
    }
}

fn gaps_on(g: &Graph, order: &CircularOrder, x: usize, y: usize, first_only: bool) -> Vec<Gap> {
    let mut idx = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for side in [Side::Forward, Side::Backward] {
        let arc = side_arc(order, x, y, side);
        for k in open_cuts(g, &mut idx, &arc, first_only) {
            out.push(Gap { a: arc[k], b: arc[k + 1], side });
        }
        if first_only && !out.is_empty() {
            break;
        }
    }
    out
}

/// All candidate gaps of the non-edge `xy` under `order`.
pub fn candidate_gaps(g: &Graph, order: &CircularOrder, x: usize, y: usize) -> Result<Vec<Gap>, GapError> {
    check_order(g, order)?;
    for v in [x, y] {
        if v >= g.n() {
            return Err(GapError::BadVertex(v));
        }
    }
    if x == y || g.has_edge(x, y) {
        return Err(GapError::IsEdge(x, y));
    }
    let (x, y) = (x.min(y), x.max(y));
    Ok(gaps_on(g, order, x, y, false))
}

/// Does every non-edge have a candidate gap? Records the first one found.
pub fn gap_condition(g: &Graph, order: &CircularOrder) -> Result<GapResult, GapError> {
    check_order(g, order)?;
    let witnesses: Vec<GapWitness> = g
        .non_edges()
        .into_iter()
        .map(|(x, y)| GapWitness { x, y, gap: gaps_on(g, order, x, y, true).first().copied() })
        .collect();
    Ok(GapResult { holds: witnesses.iter().all(|w| w.gap.is_some()), witnesses })
}

#[cfg(test)]
mod tests;
