use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Graph, GraphError};

/// Vertex `vertex` stacked on the existing edge `parents`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StackEvent {
    pub vertex: usize,
    pub parents: (usize, usize),
}

/// One processing step: the children stacked on the parent edges of
/// `active` (or on the base edge when `active` is `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackGroup {
    pub active: Option<usize>,
    /// `(other parent-edge endpoint, children)`; for the base group the
    /// endpoint is the first base vertex.
    pub edges: Vec<(usize, Vec<usize>)>,
}

/// Recipe for building a 2-tree (super)graph of the input from a base edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackingPlan {
    pub n: usize,
    pub base: (usize, usize),
    /// Events in replay order: the base group first, then one group per
    /// processed active vertex in FIFO order.
    pub events: Vec<StackEvent>,
    /// Edges of the completed 2-tree that are absent from the input.
    pub fill_edges: Vec<(usize, usize)>,
    pub groups: Vec<StackGroup>,
}

impl StackingPlan {
    /// Graph obtained by replaying the events from the base edge.
    pub fn replay(&self) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n);
        let mut present = vec![false; self.n];
        g.add_edge(self.base.0, self.base.1)?;
        present[self.base.0] = true;
        present[self.base.1] = true;
        for ev in &self.events {
            let (a, b) = ev.parents;
            if present[ev.vertex] || !g.has_edge(a, b) {
                return Err(GraphError::BadParameters {
                    family: "stacking plan".into(),
                    message: format!("event {ev:?} does not fire"),
                });
            }
            g.add_edge(ev.vertex, a)?;
            g.add_edge(ev.vertex, b)?;
            present[ev.vertex] = true;
        }
        if present.iter().any(|&p| !p) {
            return Err(GraphError::BadParameters {
                family: "stacking plan".into(),
                message: "plan does not cover every vertex".into(),
            });
        }
        Ok(g)
    }
}

/// True for 2-trees (and for `K_2`): peel simplicial degree-2 vertices.
pub fn is_two_tree(g: &Graph) -> bool {
    let n = g.n();
    if n < 2 || !g.is_connected() || g.edge_count() != 2 * n - 3 {
        return false;
    }
    let mut h = g.clone();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    while alive.len() > 2 {
        let pick = alive.iter().copied().find(|&x| {
            let nb = h.neighbors(x);
            nb.len() == 2 && h.has_edge(nb[0], nb[1])
        });
        let Some(x) = pick else { return false };
        let nb = h.neighbors(x).to_vec();
        for w in nb {
            h.remove_edge(x, w);
        }
        alive.remove(&x);
    }
    let v: Vec<usize> = alive.into_iter().collect();
    h.has_edge(v[0], v[1])
}

/// Stacking plan for `g` (a 2-tree) or for a 2-tree supergraph of `g`
/// (treewidth at most two), via degree-≤2 elimination with fill.
pub fn two_tree_plan(g: &Graph) -> Result<StackingPlan, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::BadParameters {
            family: "two_tree_plan".into(),
            message: "need at least two vertices".into(),
        });
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut h = g.clone();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut cand: BTreeSet<usize> = (0..n).filter(|&v| h.degree(v) <= 2).collect();
    let mut elim: Vec<StackEvent> = Vec::with_capacity(n);
    while remaining > 2 {
        let Some(&x) = cand.iter().next() else {
            return Err(GraphError::NotPartialTwoTree { remaining });
        };
        cand.remove(&x);
        let nb = h.neighbors(x).to_vec();
        let parents = match nb.len() {
            2 => {
                let (a, b) = (nb[0], nb[1]);
                if !h.has_edge(a, b) {
                    h.insert(a, b);
                }
                (a, b)
            }
            1 => {
                let a = nb[0];
                let b = h.neighbors(a).iter().copied().find(|&w| w != x).ok_or(GraphError::Disconnected)?;
                (a, b)
            }
            _ => return Err(GraphError::Disconnected),
        };
        for &w in &nb {
            h.remove_edge(x, w);
        }
        alive[x] = false;
        remaining -= 1;
        elim.push(StackEvent { vertex: x, parents });
        for w in [parents.0, parents.1] {
            if alive[w] {
                if h.degree(w) <= 2 {
                    cand.insert(w);
                } else {
                    cand.remove(&w);
                }
            }
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let base = (rest[0], rest[1]);
    if !h.has_edge(base.0, base.1) {
        return Err(GraphError::Disconnected);
    }
    elim.reverse();
    let stacked = elim;

    // Which vertex "owns" each edge: the later-stacked endpoint.
    let mut order = vec![usize::MAX; n];
    for (i, ev) in stacked.iter().enumerate() {
        order[ev.vertex] = i;
    }
    let rank = |v: usize| -> i64 {
        if v == base.0 || v == base.1 {
            -1
        } else {
            order[v] as i64
        }
    };
    let mut children: HashMap<(Option<usize>, usize), Vec<usize>> = HashMap::new();
    for ev in &stacked {
        let (a, b) = ev.parents;
        let key = if rank(a) < 0 && rank(b) < 0 {
            (None, base.0)
        } else if rank(a) > rank(b) {
            (Some(a), b)
        } else {
            (Some(b), a)
        };
        children.entry(key).or_default().push(ev.vertex);
    }
    let parents_of: HashMap<usize, (usize, usize)> = stacked.iter().map(|ev| (ev.vertex, ev.parents)).collect();

    let mut events = Vec::with_capacity(stacked.len());
    let mut groups = Vec::new();
    let base_kids = children.remove(&(None, base.0)).unwrap_or_default();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &x in &base_kids {
        events.push(StackEvent { vertex: x, parents: base });
        queue.push_back(x);
    }
    groups.push(StackGroup { active: None, edges: vec![(base.0, base_kids)] });
    while let Some(v) = queue.pop_front() {
        let (pa, pb) = parents_of[&v];
        let mut edges = Vec::with_capacity(2);
        for p in [pa, pb] {
            let kids = children.remove(&(Some(v), p)).unwrap_or_default();
            for &x in &kids {
                events.push(StackEvent { vertex: x, parents: (v, p) });
                queue.push_back(x);
            }
            edges.push((p, kids));
        }
        groups.push(StackGroup { active: Some(v), edges });
    }
    debug_assert!(children.is_empty());

    let mut plan = StackingPlan { n, base, events, fill_edges: Vec::new(), groups };
    let full = plan.replay()?;
    plan.fill_edges = full.edges().into_iter().filter(|&(u, v)| !g.has_edge(u, v)).collect();
    Ok(plan)
}
