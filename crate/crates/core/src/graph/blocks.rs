use std::collections::{BTreeSet, VecDeque};

use super::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Bridge,
    /// Induced simple cycle.
    Cycle,
    /// Any other 2-connected block.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// For cycles: cycle order starting at the anchor. Otherwise: anchor
    /// first, then the rest ascending.
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
    /// Cut vertex toward the root block, or a chosen vertex for roots.
    pub anchor: usize,
    pub parent: Option<usize>,
    pub component: usize,
}

/// Block-cut forest with blocks stored in BFS order per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub n: usize,
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
    /// `(block index, cut vertex)` incidences of the block-cut forest.
    pub tree_edges: Vec<(usize, usize)>,
    pub roots: Vec<usize>,
    /// Vertices without incident edges.
    pub isolated: Vec<usize>,
}

impl BlockDecomposition {
    pub fn is_cactus(&self) -> bool {
        self.blocks.iter().all(|b| b.kind != BlockKind::Other)
    }
}

/// Edge sets of the biconnected components (Hopcroft–Tarjan with an edge stack).
fn biconnected_edge_sets(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            let nb = g.neighbors(u);
            if *idx < nb.len() {
                let w = nb[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    estack.push((u, w));
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    estack.push((u, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = estack.pop() {
                            comp.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

fn cycle_order(g: &Graph, verts: &BTreeSet<usize>, start: usize) -> Vec<usize> {
    let inside = |w: &usize| verts.contains(w);
    let mut seq = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start).iter().copied().filter(inside).min().expect("cycle vertex has block neighbors");
    while cur != start {
        seq.push(cur);
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(inside)
            .find(|&w| w != prev)
            .expect("cycle vertex has two block neighbors");
        prev = cur;
        cur = next;
    }
    seq
}

/// Blocks, cut vertices and the BFS-rooted block-cut forest of `g`.
///
/// Disconnected input is decomposed per component. The root block of each
/// component is its lowest block (by sorted vertex list), anchored at its
/// smallest vertex.
pub fn block_cut_tree(g: &Graph) -> Result<BlockDecomposition, GraphError> {
    let n = g.n();
    let mut raw: Vec<(BTreeSet<usize>, usize)> = biconnected_edge_sets(g)
        .into_iter()
        .map(|es| {
            let vs: BTreeSet<usize> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
            (vs, es.len())
        })
        .collect();
    raw.sort_by(|a, b| a.0.iter().cmp(b.0.iter()));

    let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (vs, _)) in raw.iter().enumerate() {
        for &v in vs {
            blocks_of[v].push(i);
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| blocks_of[v].len() > 1).collect();
    let isolated: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 0).collect();

    let mut component_of = vec![usize::MAX; n];
    for (c, comp) in g.components().iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }

    let mut new_index = vec![usize::MAX; raw.len()];
    let mut blocks: Vec<Block> = Vec::with_capacity(raw.len());
    let mut roots = Vec::new();
    let mut tree_edges = Vec::new();
    for r in 0..raw.len() {
        if new_index[r] != usize::MAX {
            continue;
        }
        // BFS over the block-cut tree of this component.
        let root_anchor = *raw[r].0.iter().next().expect("nonempty block");
        let mut queue = VecDeque::from([(r, root_anchor, None::<usize>)]);
        new_index[r] = usize::MAX - 1;
        roots.push(blocks.len());
        while let Some((b, anchor, parent)) = queue.pop_front() {
            let idx = blocks.len();
            new_index[b] = idx;
            let (vs, ecount) = &raw[b];
            let kind = if vs.len() == 2 {
                BlockKind::Bridge
            } else if *ecount == vs.len() {
                BlockKind::Cycle
            } else {
                BlockKind::Other
            };
            let vertices = match kind {
                BlockKind::Cycle => cycle_order(g, vs, anchor),
                _ => std::iter::once(anchor).chain(vs.iter().copied().filter(|&v| v != anchor)).collect(),
            };
            blocks.push(Block { vertices: vertices.clone(), kind, anchor, parent, component: component_of[anchor] });
            for &v in &vertices {
                if blocks_of[v].len() > 1 {
                    tree_edges.push((idx, v));
                }
                if v == anchor && parent.is_some() {
                    continue;
                }
                for &ob in &blocks_of[v] {
                    if ob != b && new_index[ob] == usize::MAX {
                        new_index[ob] = usize::MAX - 1;
                        queue.push_back((ob, v, Some(idx)));
                    }
                }
            }
        }
    }
    Ok(BlockDecomposition { n, blocks, cut_vertices, tree_edges, roots, isolated })
}
