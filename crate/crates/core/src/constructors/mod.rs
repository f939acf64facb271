//! Constructive proofs as placement/order builders. Outputs are checked by
//! the verifier, never trusted.

mod arcs;
pub mod random;
mod two_tree;

use thiserror::Error;

use crate::geom::GeomError;
use crate::graph::{
    caterpillar_spine, BlockDecomposition, BlockKind, CircularOrder, Graph, GraphError, OuterpathStructure,
};
use crate::verifier::{check_cnp, VerifyError};

pub use two_tree::{
    construct_partial_two_tree, construct_two_tree, ArcRecord, ArcScaffold, ConstructionTrace, TraceStep, TwoTreeOutput,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    OutOfRange(String),
    #[error("certificate fails the consecutive-neighbors property at vertex {vertex}")]
    CnpViolation { vertex: usize },
    #[error("certificate leaves non-edge {0}-{1} uncovered")]
    CnpUncovered(usize, usize),
    #[error("construction failed: {0}")]
    Failed(String),
}

/// Inserts `items` as one interval right after `anchor`.
fn insert_after(seq: &mut Vec<usize>, anchor: usize, items: &[usize]) {
    let at = seq.iter().position(|&x| x == anchor).expect("anchor is placed") + 1;
    seq.splice(at..at, items.iter().copied());
}

/// Zig-zag order of a cycle block `c_1 .. c_k` (from its anchor): `c_i`
/// takes relative position `1, k, 2, k-1, ...`.
fn zigzag(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let mut slot = vec![usize::MAX; k];
    let (mut lo, mut hi) = (0, k - 1);
    for (i, &c) in cycle.iter().enumerate() {
        if i % 2 == 0 {
            slot[lo] = c;
            lo += 1;
        } else {
            slot[hi] = c;
            hi -= 1;
        }
    }
    slot
}

/// Circular order of a cactus (forest): blocks in BFS order, each inserted
/// as an interval right after its anchor; components concatenated.
pub fn construct_cactus_order(bd: &BlockDecomposition) -> Result<CircularOrder, ConstructError> {
    if let Some(b) = bd.blocks.iter().find(|b| b.kind == BlockKind::Other) {
        return Err(GraphError::NotACactus(format!("block {:?} is neither an edge nor a cycle", b.vertices)).into());
    }
    let mut seq: Vec<usize> = Vec::with_capacity(bd.n);
    let mut placed = vec![false; bd.n];
    for b in &bd.blocks {
        if !placed[b.anchor] {
            seq.push(b.anchor);
            placed[b.anchor] = true;
        }
        let rest: Vec<usize> = match b.kind {
            BlockKind::Cycle => zigzag(&b.vertices)[1..].to_vec(),
            _ => b.vertices[1..].to_vec(),
        };
        if let Some(&v) = rest.iter().find(|&&v| placed[v]) {
            return Err(ConstructError::Failed(format!("vertex {v} lies in two blocks below their anchors")));
        }
        for &v in &rest {
            placed[v] = true;
        }
        insert_after(&mut seq, b.anchor, &rest);
    }
    seq.extend(bd.isolated.iter().copied());
    Ok(CircularOrder::new(seq)?)
}

/// Order of `P_k □ P_l` (vertex `r k + c` is `v_{c+1}` of copy `r`): each
/// copy of `P_k` zig-zags as `v_k, v_{k-2}, .., v_{k-1}`, copies in sequence.
pub fn construct_grid_order(k: usize, l: usize) -> Result<CircularOrder, ConstructError> {
    if k < 2 || l < 2 {
        return Err(ConstructError::OutOfRange(format!("grid needs k, l >= 2 (got {k}, {l})")));
    }
    // 1-based path indices: descending with k's parity, then ascending with the other.
    let down = (1..=k).rev().filter(|i| i % 2 == k % 2);
    let up = (1..=k).filter(|i| i % 2 != k % 2);
    let copy: Vec<usize> = down.chain(up).map(|i| i - 1).collect();
    let seq = (0..l).flat_map(|r| copy.iter().map(move |&c| r * k + c)).collect();
    Ok(CircularOrder::new(seq)?)
}

/// Order of a (triangulated) outerpath: start with `t_1` in the Hamiltonian
/// direction, then put each `v_i` next to its attachment vertex, on the
/// side away from the empty arc of `e_{i-1}`.
pub fn construct_outerpath_order(ops: &OuterpathStructure) -> Result<CircularOrder, ConstructError> {
    let n = ops.n();
    let bad = |m: &str| ConstructError::Graph(GraphError::BadOuterpath(m.to_string()));
    if n < 3 || ops.sequence.len() != n || ops.triangles.len() != n - 2 {
        return Err(bad("structure does not match its vertex count"));
    }
    let s = &ops.sequence;
    let mut seq = vec![s[0], s[1], s[2]];
    for i in 4..=n {
        let vi = s[i - 1];
        let (ta, tb) = (&ops.triangles[i - 4], &ops.triangles[i - 3]);
        let chord: Vec<usize> = ta.iter().copied().filter(|x| tb.contains(x)).collect();
        let anchor = if i < n { ops.attachments[i - 1].ok_or_else(|| bad("missing attachment"))? } else { s[n - 2] };
        if chord.len() != 2 || !chord.contains(&anchor) || !tb.contains(&vi) {
            return Err(bad("triangle sequence does not match the insertion sequence"));
        }
        let other = if chord[0] == anchor { chord[1] } else { chord[0] };
        let at = seq.iter().position(|&x| x == anchor).expect("anchor placed");
        let m = seq.len();
        if seq[(at + 1) % m] == other {
            seq.insert(at, vi);
        } else if seq[(at + m - 1) % m] == other {
            seq.insert(at + 1, vi);
        } else {
            return Err(bad("attachment edge is not an empty arc"));
        }
    }
    Ok(CircularOrder::new(seq)?)
}

/// `<p_1, p_2, leaves of p_2, p_3, .., p_{r-1}, leaves of p_{r-1}, p_r>`.
pub fn construct_caterpillar_complement_order(t: &Graph) -> Result<CircularOrder, ConstructError> {
    let spine = caterpillar_spine(t)?;
    let r = spine.len();
    let mut on_spine = vec![false; t.n()];
    for &p in &spine {
        on_spine[p] = true;
    }
    let mut seq = Vec::with_capacity(t.n());
    for (i, &p) in spine.iter().enumerate() {
        seq.push(p);
        if i > 0 && i + 1 < r {
            seq.extend(t.neighbors(p).iter().copied().filter(|&w| !on_spine[w]));
        }
    }
    Ok(CircularOrder::new(seq)?)
}

/// Order for `K_n - C_k` (cycle on vertices `0..k`) with `k` in `{3, 4, n}`.
pub fn construct_kn_minus_ck_order(n: usize, k: usize) -> Result<CircularOrder, ConstructError> {
    if k < 3 || k > n {
        return Err(ConstructError::OutOfRange(format!("need 3 <= k <= n (got n={n}, k={k})")));
    }
    let head: Vec<usize> = match k {
        3 => vec![0, 1, 2],
        4 => vec![0, 1, 3, 2],
        _ if k == n => (0..n).collect(),
        _ => return Err(ConstructError::OutOfRange(format!("K_n - C_k has no convex OOR for k={k}, n={n}"))),
    };
    Ok(CircularOrder::new(head.into_iter().chain(k..n).collect())?)
}

/// The consecutive-neighbors cover used for `K_n - C_k`.
pub fn kn_minus_ck_cover(n: usize, k: usize) -> Vec<usize> {
    if k == 4 && n >= 4 {
        (0..n).filter(|&v| v != 1 && v != 3).collect()
    } else {
        (0..n).collect()
    }
}

/// Returns `certificate` if every endpoint of a non-edge has consecutive
/// neighbors in it.
pub fn construct_cnp_order(g: &Graph, certificate: &CircularOrder) -> Result<CircularOrder, ConstructError> {
    if certificate.len() != g.n() {
        return Err(ConstructError::OutOfRange(format!(
            "certificate lists {} vertices, graph has {}",
            certificate.len(),
            g.n()
        )));
    }
    let mut cover: Vec<usize> = g.non_edges().into_iter().flat_map(|(u, v)| [u, v]).collect();
    cover.sort_unstable();
    cover.dedup();
    let r = check_cnp(g, certificate, &cover);
    if let Some(&vertex) = r.violations.first() {
        return Err(ConstructError::CnpViolation { vertex });
    }
    if let Some(&(u, v)) = r.uncovered.first() {
        return Err(ConstructError::CnpUncovered(u, v));
    }
    Ok(certificate.clone())
}

#[cfg(test)]
mod tests;
