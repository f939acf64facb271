//! Backtracking over canonical circular orders: vertex 0 first and
//! `σ(1) < σ(n-1)`, so each order is met once up to rotation and reflection.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use super::{gap_condition, open_cuts, GapResult};
use crate::geom::{int, regular_placement, Placement, Point};
use crate::graph::{CircularOrder, Graph};
use crate::verifier::{verify_oor, VerificationReport};

/// Limits on search nodes visited and wall-clock time.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Cut partial orders in which some placed non-edge can no longer get
    /// a candidate gap.
    pub prune: bool,
    pub budget: Budget,
    /// Worker threads; the order space is split by prefix.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, budget: Budget::default(), jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchStatus {
    Found {
        order: CircularOrder,
        witness: GapResult,
        /// The regular-placement verdict, for regular search.
        report: Option<VerificationReport>,
    },
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Canonical orders covered, counting whole pruned subtrees.
    pub orders_examined: u64,
    pub elapsed_ms: f64,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self.status, SearchStatus::Found { .. })
    }

    pub fn is_exhausted(&self) -> bool {
        self.status == SearchStatus::Exhausted
    }

    pub fn order(&self) -> Option<&CircularOrder> {
        match &self.status {
            SearchStatus::Found { order, .. } => Some(order),
            _ => None,
        }
    }

    pub fn status_str(&self) -> &'static str {
        match self.status {
            SearchStatus::Found { .. } => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::BudgetExceeded => "budget-exceeded",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "status": self.status_str(),
            "orders_examined": self.orders_examined,
            "elapsed_ms": self.elapsed_ms,
        });
        if let SearchStatus::Found { order, witness, report } = &self.status {
            v["order"] = json!(order.as_slice());
            v["gap_condition"] = witness.to_json();
            if let Some(r) = report {
                v["report"] = r.to_json();
            }
        }
        v
    }
}

/// All `(n-1)!/2` canonical orders (one for `n <= 2`), in search order.
pub fn canonical_orders(n: usize) -> Vec<CircularOrder> {
    fn rec(seq: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<CircularOrder>) {
        let n = used.len();
        if seq.len() == n {
            if n < 3 || seq[n - 1] > seq[1] {
                out.push(CircularOrder::new(seq.clone()).expect("permutation"));
            }
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                seq.push(v);
                rec(seq, used, out);
                seq.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut used = vec![false; n];
    used[0] = true;
    rec(&mut vec![0], &mut used, &mut out);
    out
}

type Accept<'a> = dyn Fn(&[usize]) -> bool + Sync + 'a;

struct Shared<'a> {
    g: &'a Graph,
    n: usize,
    prune: bool,
    fact: Vec<u128>,
    accept: &'a Accept<'a>,
    covered: AtomicU64,
    nodes: AtomicU64,
    best: AtomicUsize,
    exceeded: AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

struct Worker<'s, 'a> {
    s: &'s Shared<'a>,
    task: usize,
    seq: Vec<usize>,
    used: Vec<bool>,
    pos: Vec<usize>,
    idx: Vec<usize>,
    arc: Vec<usize>,
    ticks: u64,
}

impl<'s, 'a> Worker<'s, 'a> {
    fn new(s: &'s Shared<'a>, task: usize, prefix: &[usize]) -> Self {
        let mut w = Worker {
            s,
            task,
            seq: Vec::with_capacity(s.n),
            used: vec![false; s.n],
            pos: vec![usize::MAX; s.n],
            idx: vec![usize::MAX; s.n],
            arc: Vec::with_capacity(s.n),
            ticks: 0,
        };
        for &v in prefix {
            w.push(v);
        }
        w
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.seq.len();
        self.used[v] = true;
        self.seq.push(v);
    }

    fn pop(&mut self) {
        let v = self.seq.pop().expect("non-empty prefix");
        self.used[v] = false;
        self.pos[v] = usize::MAX;
    }

    fn stopped(&self) -> bool {
        self.s.exceeded.load(Ordering::Relaxed) || self.s.best.load(Ordering::Relaxed) < self.task
    }

    fn tick(&mut self) {
        self.ticks += 1;
        if !self.ticks.is_multiple_of(1024) {
            return;
        }
        let total = self.s.nodes.fetch_add(1024, Ordering::Relaxed) + 1024;
        let over_nodes = self.s.max_nodes.is_some_and(|m| total > m);
        let over_time = self.s.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.s.exceeded.store(true, Ordering::Relaxed);
        }
    }

    /// Canonical completions of the current prefix (length >= 2).
    fn completions(&self) -> u128 {
        let n = self.s.n;
        let r = n - self.seq.len();
        if r == 0 {
            return u128::from(self.seq[n - 1] > self.seq[1]);
        }
        let above = (self.seq[1] + 1..n).filter(|&v| !self.used[v]).count() as u128;
        above * self.s.fact[r - 1]
    }

    fn cover(&self, k: u128) {
        let k = u64::try_from(k).unwrap_or(u64::MAX);
        self.s.covered.fetch_add(k, Ordering::Relaxed);
    }

    fn has_open_cut(&mut self, parts: [&[usize]; 2]) -> bool {
        self.arc.clear();
        self.arc.extend_from_slice(parts[0]);
        self.arc.extend_from_slice(parts[1]);
        !open_cuts(self.s.g, &mut self.idx, &self.arc, true).is_empty()
    }

    /// Can every placed non-edge still get a candidate gap? Exact once the
    /// order is complete. The unplaced stretch sits between the last placed
    /// vertex and vertex 0, i.e. at the junction of the wrapping arc.
    fn alive(&mut self) -> bool {
        let d = self.seq.len();
        for j in 1..d {
            for i in 0..j {
                let (x, y) = (self.seq[i], self.seq[j]);
                if self.s.g.has_edge(x, y) {
                    continue;
                }
                let seq = std::mem::take(&mut self.seq);
                let ok = self.has_open_cut([&seq[i..=j], &[]]) || self.has_open_cut([&seq[j..], &seq[..=i]]);
                self.seq = seq;
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self) -> bool {
        self.tick();
        if self.stopped() {
            return false;
        }
        let n = self.s.n;
        let d = self.seq.len();
        if d == n {
            if self.seq[n - 1] < self.seq[1] {
                return false;
            }
            self.cover(1);
            return self.alive() && (self.s.accept)(&self.seq);
        }
        if d >= 2 && self.s.prune && !self.alive() {
            self.cover(self.completions());
            return false;
        }
        for v in 1..n {
            if self.used[v] || (d == n - 1 && v < self.seq[1]) {
                continue;
            }
            self.push(v);
            let viable = self.seq.len() < 2 || self.seq.len() == n || (self.seq[1] + 1..n).any(|w| !self.used[w]);
            if viable && self.dfs() {
                return true;
            }
            self.pop();
        }
        false
    }
}

fn factorials(n: usize) -> Vec<u128> {
    let mut f = vec![1u128; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1].saturating_mul(i as u128);
    }
    f
}

/// Prefixes (starting at 0) of a common length that split the search.
fn prefixes(n: usize, jobs: usize) -> Vec<Vec<usize>> {
    let mut level = vec![vec![0]];
    while jobs > 1 && level.len() < 16 * jobs && level[0].len() + 2 < n {
        level = level
            .iter()
            .flat_map(|p| (1..n).filter(|v| !p.contains(v)).map(move |v| [p.as_slice(), &[v]].concat()))
            .filter(|p| p.len() < 2 || (p[1] + 1..n).any(|w| !p.contains(&w)))
            .collect();
    }
    level
}

fn run(g: &Graph, opts: &SearchOptions, accept: &Accept<'_>) -> (Option<CircularOrder>, bool, u64) {
    let n = g.n();
    if n <= 2 {
        let seq: Vec<usize> = (0..n).collect();
        let order = CircularOrder::new(seq.clone()).expect("identity");
        let holds = gap_condition(g, &order).expect("sizes match").holds;
        return ((holds && accept(&seq)).then_some(order), false, 1);
    }
    let shared = Shared {
        g,
        n,
        prune: opts.prune,
        fact: factorials(n),
        accept,
        covered: AtomicU64::new(0),
        nodes: AtomicU64::new(0),
        best: AtomicUsize::new(usize::MAX),
        exceeded: AtomicBool::new(false),
        max_nodes: opts.budget.max_nodes,
        deadline: opts.budget.max_time.map(|t| Instant::now() + t),
    };
    let tasks = prefixes(n, opts.jobs.max(1));
    let work = |(task, prefix): (usize, &Vec<usize>)| -> Option<(usize, Vec<usize>)> {
        let mut w = Worker::new(&shared, task, prefix);
        if w.dfs() {
            shared.best.fetch_min(task, Ordering::Relaxed);
            Some((task, w.seq))
        } else {
            None
        }
    };
    let found: Option<(usize, Vec<usize>)> = if opts.jobs <= 1 {
        tasks.iter().enumerate().find_map(work)
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool");
        pool.install(|| tasks.par_iter().enumerate().filter_map(work).min_by_key(|(t, _)| *t))
    };
    let order = found.map(|(_, seq)| CircularOrder::new(seq).expect("permutation"));
    let exceeded = order.is_none() && shared.exceeded.load(Ordering::Relaxed);
    (order, exceeded, shared.covered.load(Ordering::Relaxed))
}

fn outcome(
    g: &Graph,
    start: Instant,
    (order, exceeded, examined): (Option<CircularOrder>, bool, u64),
    report: impl Fn(&CircularOrder) -> Option<VerificationReport>,
) -> SearchOutcome {
    let status = match order {
        Some(order) => SearchStatus::Found {
            witness: gap_condition(g, &order).expect("sizes match"),
            report: report(&order),
            order,
        },
        None if exceeded => SearchStatus::BudgetExceeded,
        None => SearchStatus::Exhausted,
    };
    SearchOutcome { status, orders_examined: examined, elapsed_ms: start.elapsed().as_secs_f64() * 1e3 }
}

/// Searches canonical orders for one satisfying the gap condition.
pub fn search_gap_order(g: &Graph, opts: &SearchOptions) -> SearchOutcome {
    let start = Instant::now();
    let res = run(g, opts, &|_| true);
    outcome(g, start, res, |_| None)
}

fn regular_report(g: &Graph, order: &CircularOrder) -> VerificationReport {
    let pl = if order.len() >= 3 {
        regular_placement(order).expect("n >= 3")
    } else {
        let pts = (0..order.len()).map(|i| Point::new(int(i as i64), int(0))).collect();
        Placement::rational(pts).expect("distinct points")
    };
    verify_oor(g, &pl).expect("sizes match")
}

/// Searches canonical orders whose regular placement is an OOR; orders
/// failing the gap condition are skipped without geometry.
pub fn search_regular_order(g: &Graph, opts: &SearchOptions) -> SearchOutcome {
    let start = Instant::now();
    let accept = |seq: &[usize]| {
        let order = CircularOrder::new(seq.to_vec()).expect("permutation");
        regular_report(g, &order).valid
    };
    let res = run(g, &SearchOptions { prune: true, ..opts.clone() }, &accept);
    outcome(g, start, res, |o| Some(regular_report(g, o)))
}
