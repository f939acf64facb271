use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::*;
use super::*;
use crate::geom::{cocircular_placement, regular_placement};
use crate::graph::{block_cut_tree, named_graph, two_tree_plan, validate_outerpath, NamedGraph};
use crate::verifier::{verify_oor, VerificationReport};

fn regular_report(g: &Graph, order: &CircularOrder) -> VerificationReport {
    verify_oor(g, &regular_placement(order).unwrap()).unwrap()
}

fn assert_reducible_regular(g: &Graph, order: &CircularOrder) {
    let r = regular_report(g, order);
    assert!(r.valid && r.reducible, "{g:?} {order:?}: {:?} {:?}", r.failures, r.inner_edges);
}

fn assert_universal(g: &Graph, order: &CircularOrder, seeds: u64) {
    for seed in 0..seeds {
        let pl = cocircular_placement(order, true, seed).unwrap();
        assert!(verify_oor(g, &pl).unwrap().valid, "seed {seed} {order:?}");
    }
}

#[test]
fn triangle_two_tree() {
    let g = Graph::complete(3);
    let plan = two_tree_plan(&g).unwrap();
    let (pl, trace) = construct_two_tree(&plan).unwrap();
    let r = verify_oor(&g, &pl).unwrap();
    assert!(r.valid && r.reducible && r.vertices_on_outer_face);
    trace.check_invariants().unwrap();
    assert_eq!(trace.steps.len(), 1);
}

#[test]
fn random_two_tree_n25() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let g = random_two_tree(25, &mut rng);
    let plan = two_tree_plan(&g).unwrap();
    let (pl, trace) = construct_two_tree(&plan).unwrap();
    let r = verify_oor(&g, &pl).unwrap();
    assert!(r.valid && r.reducible && r.vertices_on_outer_face, "{:?}", r.failures);
    // Base edge horizontal, everything else above it.
    let p = pl.rational_points().unwrap();
    let (b0, b1) = plan.base;
    assert_eq!(p[b0].y, p[b1].y);
    assert!((0..25).filter(|&v| v != b0 && v != b1).all(|v| p[v].y > p[b0].y));
    assert!(trace.to_json()["steps"].as_array().unwrap().len() >= 2);
}

#[test]
fn trace_invariants_hold_every_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 3..13 {
        let g = random_two_tree(n, &mut rng);
        let (_, trace) = construct_two_tree(&two_tree_plan(&g).unwrap()).unwrap();
        trace.check_invariants().unwrap_or_else(|e| panic!("n={n}: {e}"));
    }
}

#[test]
fn two_tree_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..12 {
        let g = random_two_tree(4 + i, &mut rng);
        let (pl, _) = construct_two_tree(&two_tree_plan(&g).unwrap()).unwrap();
        let r = verify_oor(&g, &pl).unwrap();
        assert!(r.valid && r.reducible && r.vertices_on_outer_face, "{g:?}");
    }
}

#[test]
fn partial_two_trees() {
    let p5 = named_graph(&NamedGraph::Path(5)).unwrap();
    let out = construct_partial_two_tree(&p5).unwrap();
    assert!(out.restriction.report.valid);
    assert_eq!(out.restriction.graph, p5);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 3..14 {
        let g = random_partial_two_tree(n, &mut rng);
        let out = construct_partial_two_tree(&g).unwrap();
        assert!(out.restriction.report.valid && out.restriction.graph == g);
    }
    let k4 = Graph::complete(4);
    assert!(matches!(construct_partial_two_tree(&k4), Err(ConstructError::Graph(_))));
}

#[test]
fn cactus_cycle_zigzag() {
    let c5 = named_graph(&NamedGraph::Cycle(5)).unwrap();
    let order = construct_cactus_order(&block_cut_tree(&c5).unwrap()).unwrap();
    // Cycle order c1..c5 = 0..4 from anchor 0.
    assert_eq!(order.as_slice(), &[0, 2, 4, 3, 1]);
    assert_reducible_regular(&c5, &order);
    let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
    assert_eq!(construct_cactus_order(&block_cut_tree(&edge).unwrap()).unwrap().len(), 2);
    let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
    let order = construct_cactus_order(&block_cut_tree(&bowtie).unwrap()).unwrap();
    assert_reducible_regular(&bowtie, &order);
    let k4 = Graph::complete(4);
    assert!(construct_cactus_order(&block_cut_tree(&k4).unwrap()).is_err());
}

#[test]
fn random_cacti_and_forests() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 3..22 {
        let g = random_cactus(n, &mut rng);
        let order = construct_cactus_order(&block_cut_tree(&g).unwrap()).unwrap();
        assert_reducible_regular(&g, &order);
        if n % 5 == 0 {
            assert_universal(&g, &order, 3);
        }
    }
    // Two triangles and an isolated vertex.
    let forest = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    let order = construct_cactus_order(&block_cut_tree(&forest).unwrap()).unwrap();
    assert!(regular_report(&forest, &order).valid);
}

#[test]
fn grid_orders() {
    assert_eq!(construct_grid_order(5, 2).unwrap().as_slice()[..5], [4, 2, 0, 1, 3]);
    assert_eq!(construct_grid_order(4, 2).unwrap().as_slice()[..4], [3, 1, 0, 2]);
    for k in 2..6 {
        for l in 2..6 {
            let order = construct_grid_order(k, l).unwrap();
            let g = named_graph(&NamedGraph::Grid(k, l)).unwrap();
            for v in 0..k * (l - 1) {
                assert_eq!(order.circular_length(v, v + k), k);
            }
            assert_reducible_regular(&g, &order);
        }
    }
    assert!(construct_grid_order(1, 3).is_err());
}

#[test]
fn outerpath_orders() {
    let tri = Graph::complete(3);
    let s = validate_outerpath(&tri, &CircularOrder::identity(3)).unwrap();
    assert_eq!(construct_outerpath_order(&s).unwrap().len(), 3);
    let fan = named_graph(&NamedGraph::Fan(6)).unwrap();
    // Apex last, path first.
    let s = validate_outerpath(&fan, &CircularOrder::identity(6)).unwrap();
    let order = construct_outerpath_order(&s).unwrap();
    assert_reducible_regular(&fan, &order);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 3..13 {
        let (g, ham) = random_maximal_outerpath(n, &mut rng);
        let order = construct_outerpath_order(&validate_outerpath(&g, &ham).unwrap()).unwrap();
        assert_reducible_regular(&g, &order);
        if n == 8 {
            assert_universal(&g, &order, 4);
        }
    }
}

#[test]
fn caterpillar_complements() {
    let star = named_graph(&NamedGraph::Star(4)).unwrap();
    let order = construct_caterpillar_complement_order(&star).unwrap();
    assert!(regular_report(&star.complement(), &order).valid);
    let p6 = named_graph(&NamedGraph::Path(6)).unwrap();
    let order = construct_caterpillar_complement_order(&p6).unwrap();
    assert!(regular_report(&p6.complement(), &order).valid);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 3..11 {
        let t = random_caterpillar(n, &mut rng);
        let order = construct_caterpillar_complement_order(&t).unwrap();
        assert!(regular_report(&t.complement(), &order).valid, "{t:?}");
        assert_universal(&t.complement(), &order, 2);
    }
    let spider = named_graph(&NamedGraph::Spider).unwrap();
    assert!(construct_caterpillar_complement_order(&spider).is_err());
}

#[test]
fn kn_minus_ck_orders() {
    for (n, k) in [(8, 3), (8, 4), (8, 8), (4, 4), (5, 3), (9, 9)] {
        let g = named_graph(&NamedGraph::CompleteMinusCycle(n, k)).unwrap();
        let order = construct_kn_minus_ck_order(n, k).unwrap();
        assert!(check_cnp(&g, &order, &kn_minus_ck_cover(n, k)).holds, "({n},{k})");
        assert!(regular_report(&g, &order).valid, "({n},{k})");
    }
    assert_eq!(construct_kn_minus_ck_order(8, 4).unwrap().as_slice()[..4], [0, 1, 3, 2]);
    assert!(construct_kn_minus_ck_order(8, 5).is_err());
    assert!(construct_kn_minus_ck_order(4, 5).is_err());
}

#[test]
fn cnp_certificates() {
    let c4 = named_graph(&NamedGraph::Cycle(4)).unwrap();
    // Convex round enumeration of C4; cycle order is not one.
    let order = construct_cnp_order(&c4, &CircularOrder::new(vec![0, 2, 1, 3]).unwrap()).unwrap();
    assert!(regular_report(&c4, &order).valid);
    assert!(construct_cnp_order(&c4, &CircularOrder::identity(4)).is_err());
    let k5 = Graph::complete(5);
    assert!(construct_cnp_order(&k5, &CircularOrder::new(vec![3, 1, 4, 0, 2]).unwrap()).is_ok());
    // Convex bipartite: U = {0,1,2} enumerated in order, W = {3,4}.
    let g = Graph::from_edges(5, &[(3, 0), (3, 1), (4, 1), (4, 2)]).unwrap();
    let order = construct_cnp_order(&g, &CircularOrder::new(vec![0, 1, 2, 4, 3]).unwrap()).unwrap();
    assert!(regular_report(&g, &order).valid);
    let c6 = named_graph(&NamedGraph::Cycle(6)).unwrap();
    assert!(matches!(
        construct_cnp_order(&c6, &CircularOrder::new(vec![0, 2, 4, 1, 3, 5]).unwrap()),
        Err(ConstructError::CnpViolation { .. })
    ));
}
