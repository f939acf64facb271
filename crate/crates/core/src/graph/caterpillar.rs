use super::{Graph, GraphError};

pub fn is_tree(t: &Graph) -> bool {
    t.n() >= 1 && t.edge_count() == t.n() - 1 && t.is_connected()
}

/// Spine `p_1 .. p_r` of a caterpillar, extended so that both ends are
/// leaves of the tree (for `n >= 2`). Every vertex is on the spine or
/// adjacent to an internal spine vertex.
pub fn caterpillar_spine(t: &Graph) -> Result<Vec<usize>, GraphError> {
    if !is_tree(t) {
        return Err(GraphError::NotATree);
    }
    let n = t.n();
    if n <= 2 {
        return Ok((0..n).collect());
    }
    let internal: Vec<usize> = (0..n).filter(|&v| t.degree(v) >= 2).collect();
    let is_internal = |v: usize| t.degree(v) >= 2;
    // Internal vertices induce a subtree; it must be a path.
    let inner_deg = |v: usize| t.neighbors(v).iter().filter(|&&w| is_internal(w)).count();
    if internal.iter().any(|&v| inner_deg(v) > 2) {
        return Err(GraphError::NotACaterpillar);
    }
    let start = *internal.iter().find(|&&v| inner_deg(v) <= 1).expect("a finite path has an end");
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = t.neighbors(cur).iter().find(|&&w| w != prev && is_internal(w)) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(path.len(), internal.len());
    let leaf_of = |v: usize, avoid: Option<usize>| {
        t.neighbors(v).iter().copied().find(|&w| !is_internal(w) && Some(w) != avoid).expect("path end has a leaf")
    };
    let first = leaf_of(path[0], None);
    let last = leaf_of(*path.last().unwrap(), Some(first));
    let mut spine = Vec::with_capacity(path.len() + 2);
    spine.push(first);
    spine.extend(path);
    spine.push(last);
    Ok(spine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};

    fn leaves_removed_is_path(t: &Graph) -> bool {
        let keep: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) >= 2).collect();
        let h = t.induced(&keep);
        h.n() <= 1 || (h.is_connected() && (0..h.n()).all(|v| h.degree(v) <= 2))
    }

    fn check_spine(t: &Graph, spine: &[usize]) {
        for w in spine.windows(2) {
            assert!(t.has_edge(w[0], w[1]));
        }
        let inner = &spine[1..spine.len() - 1];
        for v in 0..t.n() {
            assert!(spine.contains(&v) || inner.iter().any(|&p| t.has_edge(p, v)));
        }
        assert_eq!(t.degree(spine[0]), 1);
        assert_eq!(t.degree(*spine.last().unwrap()), 1);
    }

    #[test]
    fn star_spine_covers_hub() {
        let t = named_graph(&NamedGraph::Star(5)).unwrap();
        let s = caterpillar_spine(&t).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1], 0);
        check_spine(&t, &s);
    }

    #[test]
    fn path_spine_is_the_path() {
        let t = named_graph(&NamedGraph::Path(6)).unwrap();
        let s = caterpillar_spine(&t).unwrap();
        assert!(s == (0..6).collect::<Vec<_>>() || s == (0..6).rev().collect::<Vec<_>>());
    }

    #[test]
    fn spider_is_not_a_caterpillar() {
        let y = named_graph(&NamedGraph::Spider).unwrap();
        assert_eq!(caterpillar_spine(&y), Err(GraphError::NotACaterpillar));
        assert!(!leaves_removed_is_path(&y));
    }

    #[test]
    fn non_tree_is_rejected() {
        assert_eq!(caterpillar_spine(&Graph::complete(3)), Err(GraphError::NotATree));
    }

    #[test]
    fn all_small_trees_agree_with_oracle() {
        // Prüfer sequences enumerate all labeled trees on 7 vertices.
        let n = 7usize;
        let total = n.pow((n - 2) as u32);
        for code in 0..total {
            let mut seq = Vec::new();
            let mut c = code;
            for _ in 0..n - 2 {
                seq.push(c % n);
                c /= n;
            }
            let mut degree = vec![1usize; n];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut t = Graph::empty(n);
            for &s in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                t.add_edge(leaf, s).unwrap();
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            t.add_edge(rest[0], rest[1]).unwrap();
            match caterpillar_spine(&t) {
                Ok(s) => {
                    assert!(leaves_removed_is_path(&t));
                    check_spine(&t, &s);
                }
                Err(_) => assert!(!leaves_removed_is_path(&t)),
            }
        }
    }
}
