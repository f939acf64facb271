//! Canonical labelling by equitable refinement and individualization; the
//! certificate is the smallest upper-triangle adjacency string over all
//! leaves of the search tree. Meant for small graphs (catalog generation).

use super::Graph;

/// Splits cells by neighbour counts into each cell until stable. Sub-cells
/// keep their parent's place, ordered by count, so the result does not
/// depend on labels.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n();
    let mut cell_of = vec![0; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut changed = false;
        for s in 0..cells.len() {
            let mut count = vec![0usize; n];
            for &w in &cells[s] {
                for &u in g.neighbors(w) {
                    count[u] += 1;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for c in cells.iter() {
                let mut c = c.clone();
                c.sort_by_key(|&v| (count[v], v));
                let mut start = 0;
                for i in 1..=c.len() {
                    if i == c.len() || count[c[i]] != count[c[start]] {
                        next.push(c[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                *cells = next;
                changed = true;
                break;
            }
        }
        if !changed {
            return;
        }
    }
}

fn certificate(g: &Graph, cells: &[Vec<usize>]) -> Vec<bool> {
    let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let n = perm.len();
    let mut bits = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(perm[i], perm[j]));
        }
    }
    bits
}

fn search(g: &Graph, mut cells: Vec<Vec<usize>>, best: &mut Option<(Vec<bool>, Vec<usize>)>) {
    refine(g, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let cert = certificate(g, &cells);
        if best.as_ref().is_none_or(|(b, _)| cert > *b) {
            *best = Some((cert, cells.iter().map(|c| c[0]).collect()));
        }
        return;
    };
    for &v in &cells[target] {
        let mut next = cells.clone();
        let rest: Vec<usize> = next[target].iter().copied().filter(|&w| w != v).collect();
        next[target] = vec![v];
        next.insert(target + 1, rest);
        search(g, next, best);
    }
}

/// `perm[i]` is the vertex that gets canonical label `i`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut best = None;
    search(g, vec![(0..g.n()).collect()], &mut best);
    best.expect("at least one leaf").1
}

/// The canonical relabelling of `g`; isomorphic graphs give equal results.
pub fn canonical_form(g: &Graph) -> Graph {
    let perm = canonical_labeling(g);
    let mut label = vec![0; g.n()];
    for (i, &v) in perm.iter().enumerate() {
        label[v] = i;
    }
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (label[u], label[v])).collect();
    Graph::from_edges(g.n(), &edges).expect("relabelled edges")
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let e: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(g.n(), &e).unwrap()
    }

    #[test]
    fn relabelled_graphs_share_a_form() {
        let p = named_graph(&NamedGraph::Petersen).unwrap();
        let perm = [3, 7, 1, 9, 0, 2, 8, 5, 4, 6];
        assert_eq!(canonical_form(&p), canonical_form(&relabel(&p, &perm)));
        let c6 = named_graph(&NamedGraph::Cycle(6)).unwrap();
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&c6, &two_triangles));
        let prism = named_graph(&NamedGraph::GeneralizedPetersen(3, 1)).unwrap();
        let k33 =
            Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(!is_isomorphic(&prism, &k33));
        assert!(is_isomorphic(&Graph::empty(5), &Graph::empty(5)));
    }
}
