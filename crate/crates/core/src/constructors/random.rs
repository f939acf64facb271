//! Random instances of the constructible classes, with shuffled labels.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{CircularOrder, Graph};

fn shuffled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn relabel(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> Graph {
    let mapped: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::from_edges(n, &mapped).expect("relabelled edges are valid")
}

/// 2-tree on `n >= 2` vertices: stack each new vertex on a uniform edge.
pub fn random_two_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 2, "a 2-tree needs two vertices");
    let mut edges = vec![(0, 1)];
    for v in 2..n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((v, a));
        edges.push((v, b));
    }
    relabel(n, &edges, &shuffled(n, rng))
}

/// Connected partial 2-tree: a random 2-tree with about a third of its
/// edges dropped where connectivity allows.
pub fn random_partial_two_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut g = random_two_tree(n, rng);
    let mut edges = g.edges();
    edges.shuffle(rng);
    for (u, v) in edges {
        if rng.gen_bool(0.35) {
            g.remove_edge(u, v);
            if !g.is_connected() {
                g.add_edge(u, v).expect("restoring an edge");
            }
        }
    }
    g
}

/// Connected cactus on `n >= 1` vertices built from bridges and cycles of
/// length 3 to 6 hung at random vertices.
pub fn random_cactus<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let anchor = rng.gen_range(0..count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(0.6) {
            let k = rng.gen_range(3..=(room + 1).min(6));
            let mut prev = anchor;
            for v in count..count + k - 1 {
                edges.push((prev, v));
                prev = v;
            }
            edges.push((prev, anchor));
            count += k - 1;
        } else {
            edges.push((anchor, count));
            count += 1;
        }
    }
    relabel(n, &edges, &shuffled(n, rng))
}

/// Maximal outerpath on `n >= 3` vertices with its Hamiltonian order: a
/// strip triangulation of the `n`-gon advancing one side at a time.
pub fn random_maximal_outerpath<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Graph, CircularOrder) {
    assert!(n >= 3);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let (mut l, mut r) = (1, n - 1);
    while l + 1 < r {
        // Chord (l, r) separates the last triangle from the next one.
        if rng.gen_bool(0.5) {
            edges.push((l + 1, r));
            l += 1;
        } else {
            edges.push((l, r - 1));
            r -= 1;
        }
    }
    // First chord; the last steps and n == 3 repeat hull edges.
    edges.push((1, n - 1));
    edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
    edges.dedup_by_key(|e| (e.0.min(e.1), e.0.max(e.1)));
    let perm = shuffled(n, rng);
    let g = relabel(n, &edges, &perm);
    let order = CircularOrder::new((0..n).map(|i| perm[i]).collect()).expect("permutation");
    (g, order)
}

/// Caterpillar on `n >= 1` vertices: a random spine with the remaining
/// vertices hung on spine vertices.
pub fn random_caterpillar<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let spine = rng.gen_range(1..=n);
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    for v in spine..n {
        edges.push((rng.gen_range(0..spine), v));
    }
    relabel(n, &edges, &shuffled(n, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{block_cut_tree, caterpillar_spine, is_two_tree, validate_outerpath};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_hit_their_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..20 {
            assert!(is_two_tree(&random_two_tree(n, &mut rng)));
            assert!(random_partial_two_tree(n, &mut rng).is_connected());
            let c = random_cactus(n, &mut rng);
            assert!(c.is_connected() && block_cut_tree(&c).unwrap().is_cactus());
            assert!(caterpillar_spine(&random_caterpillar(n, &mut rng)).is_ok());
            if n >= 3 {
                let (g, order) = random_maximal_outerpath(n, &mut rng);
                assert_eq!(g.edge_count(), 2 * n - 3);
                let s = validate_outerpath(&g, &order).unwrap();
                assert!(s.added_edges.is_empty());
            }
        }
    }
}
