use std::io::Cursor;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::geom::{cocircular_placement, regular_placement};
use crate::graph::{is_isomorphic, named_graph, write_graph6, NamedGraph};
use crate::verifier::verify_oor;

fn named(spec: NamedGraph) -> Graph {
    named_graph(&spec).unwrap()
}

fn order(seq: &[usize]) -> CircularOrder {
    CircularOrder::new(seq.to_vec()).unwrap()
}

fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn unpruned() -> SearchOptions {
    SearchOptions { prune: false, ..SearchOptions::default() }
}

#[test]
fn candidate_gaps_small_cases() {
    let p3 = named(NamedGraph::Path(3));
    let gaps = candidate_gaps(&p3, &order(&[0, 1, 2]), 0, 2).unwrap();
    assert_eq!(gaps, vec![Gap { a: 2, b: 0, side: Side::Backward }]);
    let c4 = named(NamedGraph::Cycle(4));
    assert!(candidate_gaps(&c4, &CircularOrder::identity(4), 0, 2).unwrap().is_empty());
    assert_eq!(candidate_gaps(&c4, &order(&[0, 1, 2, 3]), 0, 1), Err(GapError::IsEdge(0, 1)));
    assert!(matches!(candidate_gaps(&c4, &order(&[0, 1, 2]), 0, 2), Err(GapError::SizeMismatch { .. })));
    // A gap sits between consecutive non-adjacent vertices only.
    let empty = Graph::empty(4);
    assert_eq!(candidate_gaps(&empty, &CircularOrder::identity(4), 0, 2).unwrap().len(), 4);
}

#[test]
fn gap_condition_and_witnesses() {
    assert!(gap_condition(&Graph::complete(6), &CircularOrder::identity(6)).unwrap().holds);
    let c6 = named(NamedGraph::Cycle(6));
    let sigma = order(&[0, 2, 4, 1, 5, 3]);
    let r = gap_condition(&c6, &sigma).unwrap();
    assert_eq!(r.witnesses.len(), 9);
    for w in &r.witnesses {
        assert_eq!(w.gap.is_some(), w.recheck(&c6, &sigma));
    }
    let c4 = named(NamedGraph::Cycle(4));
    let r = gap_condition(&c4, &CircularOrder::identity(4)).unwrap();
    assert!(!r.holds);
    assert_eq!(r.failing(), vec![(0, 2), (1, 3)]);
    assert!(r.to_json()["witnesses"][0]["gap"].is_null());
}

#[test]
fn w6_fails_every_canonical_order() {
    let w6 = named(NamedGraph::Wheel(6));
    let orders = canonical_orders(6);
    assert_eq!(orders.len(), 60);
    assert!(orders.iter().all(|o| !gap_condition(&w6, o).unwrap().holds));
    for opts in [SearchOptions::default(), unpruned()] {
        let out = search_gap_order(&w6, &opts);
        assert!(out.is_exhausted());
        assert_eq!(out.orders_examined, 60);
    }
}

#[test]
fn canonical_order_counts() {
    for n in 3..=8u64 {
        let half_factorial: u64 = (1..n).product::<u64>() / 2;
        assert_eq!(canonical_orders(n as usize).len() as u64, half_factorial, "n={n}");
    }
    assert_eq!(canonical_orders(2).len(), 1);
    let all: std::collections::HashSet<_> = canonical_orders(6).into_iter().map(|o| o.canonical()).collect();
    assert_eq!(all.len(), 60);
}

#[test]
fn small_searches() {
    let mut k4e = Graph::complete(4);
    k4e.remove_edge(0, 2);
    let out = search_gap_order(&k4e, &SearchOptions::default());
    assert!(out.is_found());
    assert!(out.orders_examined <= 3);
    let c6 = named(NamedGraph::Cycle(6));
    let out = search_gap_order(&c6, &SearchOptions::default());
    let SearchStatus::Found { order, witness, .. } = &out.status else { panic!("C6 has gap orders") };
    assert!(witness.holds && witness.witnesses.iter().all(|w| w.recheck(&c6, order)));
    assert_eq!(out.to_json()["status"], "found");
    for n in 0..3 {
        assert!(search_gap_order(&Graph::empty(n), &SearchOptions::default()).is_found());
    }
}

#[test]
fn petersen_exhausts_all_orders() {
    let p = named(NamedGraph::Petersen);
    let out = search_gap_order(&p, &SearchOptions { jobs: 4, ..SearchOptions::default() });
    assert!(out.is_exhausted());
    assert_eq!(out.orders_examined, 181_440);
}

#[test]
fn pruning_matches_plain_search() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let a = search_gap_order(&g, &SearchOptions::default());
            let b = search_gap_order(&g, &unpruned());
            assert_eq!(a.status_str(), b.status_str(), "{g:?}");
            if a.is_exhausted() {
                assert_eq!(a.orders_examined, b.orders_examined);
            }
        }
    }
}

#[test]
fn parallel_search_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let g = random_graph(8, 0.5, &mut rng);
        let a = search_gap_order(&g, &SearchOptions::default());
        let b = search_gap_order(&g, &SearchOptions { jobs: 3, ..SearchOptions::default() });
        assert_eq!(a.order(), b.order());
        assert_eq!(a.status_str(), b.status_str());
    }
}

#[test]
fn budgets_stop_the_search() {
    let p = named(NamedGraph::Petersen);
    let tight = Budget { max_nodes: Some(2000), max_time: None };
    let out = search_gap_order(&p, &SearchOptions { prune: false, budget: tight, jobs: 1 });
    assert_eq!(out.status, SearchStatus::BudgetExceeded);
    let quick = Budget { max_nodes: None, max_time: Some(Duration::ZERO) };
    let out = search_gap_order(&p, &SearchOptions { prune: false, budget: quick, jobs: 2 });
    assert_eq!(out.status_str(), "budget-exceeded");
}

#[test]
fn regular_search() {
    let c6 = named(NamedGraph::Cycle(6));
    let out = search_regular_order(&c6, &SearchOptions::default());
    let SearchStatus::Found { order, report, .. } = &out.status else { panic!("C6 has a regular OOR") };
    assert!(report.as_ref().unwrap().valid);
    assert!(verify_oor(&c6, &regular_placement(order).unwrap()).unwrap().valid);
    assert!(search_regular_order(&named(NamedGraph::Wheel(6)), &SearchOptions::default()).is_exhausted());
    for n in 0..3 {
        assert!(search_regular_order(&Graph::empty(n), &SearchOptions::default()).is_found());
    }
}

#[test]
fn failing_gap_condition_blocks_drawings() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 25 {
        let n = rng.gen_range(4..8);
        let g = random_graph(n, 0.5, &mut rng);
        let mut seq: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(seq.as_mut_slice(), &mut rng);
        let sigma = CircularOrder::new(seq).unwrap();
        if gap_condition(&g, &sigma).unwrap().holds {
            continue;
        }
        checked += 1;
        assert!(!verify_oor(&g, &regular_placement(&sigma).unwrap()).unwrap().valid);
        for seed in 0..5 {
            let pl = cocircular_placement(&sigma, true, rng.gen()).unwrap();
            assert!(!verify_oor(&g, &pl).unwrap().valid, "seed {seed}");
        }
    }
}

#[test]
fn solver_basics() {
    let b = Budget::default();
    assert_eq!(solve_clauses(0, &[], &b), SolveOutcome::Sat(vec![]));
    assert_eq!(solve_clauses(1, &[vec![1], vec![-1]], &b), SolveOutcome::Unsat);
    assert_eq!(solve_clauses(1, &[vec![]], &b), SolveOutcome::Unsat);
    // Pigeonhole 3 into 2 is unsatisfiable.
    let v = |p: i32, h: i32| 2 * p + h + 1;
    let mut php: Vec<Vec<i32>> = (0..3).map(|p| vec![v(p, 0), v(p, 1)]).collect();
    for h in 0..2 {
        for p in 0..3 {
            for q in p + 1..3 {
                php.push(vec![-v(p, h), -v(q, h)]);
            }
        }
    }
    assert_eq!(solve_clauses(6, &php, &b), SolveOutcome::Unsat);
    let sat = vec![vec![1, 2], vec![-1, 3], vec![-3, -2], vec![2, 3]];
    let SolveOutcome::Sat(m) = solve_clauses(3, &sat, &b) else { panic!("satisfiable") };
    assert!(sat.iter().all(|c| c.iter().any(|&l| m[l.unsigned_abs() as usize - 1] == (l > 0))));
}

#[test]
fn cnf_decodes_to_gap_orders() {
    let b = Budget::default();
    let k4 = Graph::complete(4);
    let c = encode_cnf(&k4);
    let SolveOutcome::Sat(m) = solve_cnf(&c, &b) else { panic!("K4 is satisfiable") };
    assert!(c.satisfied_by(&m));
    assert_eq!(c.decode(&m).unwrap().len(), 4);
    assert_eq!(solve_cnf(&encode_cnf(&named(NamedGraph::Wheel(6))), &b), SolveOutcome::Unsat);
    assert!(c.var(&VarTag::Before(0, 1)).is_some());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let n = rng.gen_range(3..7);
        let g = random_graph(n, rng.gen_range(0.3..0.9), &mut rng);
        let c = encode_cnf(&g);
        let searched = search_gap_order(&g, &SearchOptions::default());
        match solve_cnf(&c, &b) {
            SolveOutcome::Sat(m) => {
                assert!(searched.is_found(), "{g:?}");
                let o = c.decode(&m).unwrap();
                assert!(gap_condition(&g, &o).unwrap().holds, "{g:?} {o:?}");
            }
            SolveOutcome::Unsat => assert!(searched.is_exhausted(), "{g:?}"),
            SolveOutcome::BudgetExceeded => unreachable!(),
        }
    }
}

#[test]
fn dimacs_round_trip_and_strictness() {
    let c = encode_cnf(&named(NamedGraph::Cycle(5)));
    let text = write_dimacs(&c);
    let (nv, clauses) = parse_dimacs(&text).unwrap();
    assert_eq!((nv, &clauses), (c.num_vars(), &c.clauses));
    assert!(text.lines().any(|l| l.starts_with("p cnf ")));
    for bad in [
        "1 2 0\n",
        "p cnf 2 1\n1 3 0\n",
        "p cnf 2 2\n1 2 0\n",
        "p cnf 2 1\n1 2\n",
        "p cnf 2 1\np cnf 2 1\n1 0\n",
        "p dnf 2 1\n1 0\n",
        "cx\np cnf 1 1\n1 0\n",
        "p cnf 2 1\n1 x 0\n",
    ] {
        assert!(parse_dimacs(bad).is_err(), "{bad:?}");
    }
    assert_eq!(parse_dimacs("c hi\np cnf 0 0\n").unwrap(), (0, vec![]));
}

#[test]
fn generated_catalogs() {
    let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
    assert_eq!(counts, [1, 2, 4, 11, 34, 156]);
    let cubic: Vec<usize> = [4, 6, 8, 10, 12].iter().map(|&n| connected_cubic_graphs(n).len()).collect();
    assert_eq!(cubic, [1, 2, 5, 19, 85]);
    for g in connected_cubic_graphs(8) {
        assert!(g.is_connected() && (0..8).all(|v| g.degree(v) == 3));
    }
}

#[test]
fn catalog_records() {
    let p = named(NamedGraph::Petersen);
    let w6 = named(NamedGraph::Wheel(6));
    let text = format!("{}\n\n!!bad\n{}\n", write_graph6(&p), write_graph6(&w6));
    let mut recs = Vec::new();
    let opts = CatalogOptions { check: CatalogCheck::Both, jobs: 2, ..CatalogOptions::default() };
    let k = run_catalog(Cursor::new(text.clone()), &opts, |r| recs.push(r.clone())).unwrap();
    assert_eq!(k, 3);
    assert_eq!(recs[0].line, 1);
    assert_eq!(recs[0].gap.as_ref().unwrap().orders_examined, 181_440);
    assert_eq!(recs[0].status(), "exhausted");
    assert_eq!(recs[1].status(), "error");
    assert_eq!(recs[1].line, 3);
    assert_eq!(recs[2].to_json()["regular"]["status"], "exhausted");
    // Resume after the first line.
    let mut resumed = Vec::new();
    let opts = CatalogOptions { skip_lines: 1, check: CatalogCheck::Gap, ..CatalogOptions::default() };
    run_catalog(Cursor::new(text), &opts, |r| resumed.push(r.line)).unwrap();
    assert_eq!(resumed, [3, 4]);
    assert_eq!(run_catalog(Cursor::new(""), &CatalogOptions::default(), |_| {}).unwrap(), 0);
    let mut six = Vec::new();
    let filtered = CatalogOptions { max_n: Some(6), ..CatalogOptions::default() };
    run_catalog(Cursor::new(format!("{}\n{}\n", write_graph6(&p), write_graph6(&w6))), &filtered, |r| six.push(r.n))
        .unwrap();
    assert_eq!(six, [Some(6)]);
    assert!(is_isomorphic(&w6, &crate::graph::parse_graph6(&write_graph6(&w6)).unwrap()));
}
