//! Catalog harness over graph6 streams, and generators for the small
//! catalogs used in the experiments.

use std::collections::BTreeSet;
use std::io::{self, BufRead};

use rayon::prelude::*;
use serde_json::json;

use super::{search_gap_order, search_regular_order, Budget, SearchOptions, SearchOutcome};
use crate::graph::{canonical_form, parse_graph6, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogCheck {
    Gap,
    Regular,
    Both,
}

impl CatalogCheck {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gap" | "gap-search" => Some(CatalogCheck::Gap),
            "regular" | "regular-search" => Some(CatalogCheck::Regular),
            "both" => Some(CatalogCheck::Both),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogOptions {
    pub check: CatalogCheck,
    /// Lines to skip before starting (resume offset).
    pub skip_lines: usize,
    pub min_n: Option<usize>,
    pub max_n: Option<usize>,
    /// Budget per graph and per check.
    pub budget: Budget,
    /// Graphs processed concurrently; records still come out in input order.
    pub jobs: usize,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            check: CatalogCheck::Gap,
            skip_lines: 0,
            min_n: None,
            max_n: None,
            budget: Budget::default(),
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogRecord {
    /// 1-based input line.
    pub line: usize,
    pub graph6: String,
    pub n: Option<usize>,
    pub gap: Option<SearchOutcome>,
    pub regular: Option<SearchOutcome>,
    pub error: Option<String>,
}

impl CatalogRecord {
    /// `"error"`, or the status of the regular check if run, else the gap check.
    pub fn status(&self) -> &'static str {
        if self.error.is_some() {
            return "error";
        }
        self.regular.as_ref().or(self.gap.as_ref()).map_or("error", |o| o.status_str())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({"line": self.line, "id": self.graph6, "status": self.status()});
        if let Some(n) = self.n {
            v["n"] = json!(n);
        }
        if let Some(o) = &self.gap {
            v["gap"] = o.to_json();
        }
        if let Some(o) = &self.regular {
            v["regular"] = o.to_json();
        }
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        v
    }
}

fn process(line: usize, text: &str, opts: &CatalogOptions) -> Option<CatalogRecord> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let mut rec = CatalogRecord { line, graph6: text.to_string(), n: None, gap: None, regular: None, error: None };
    let g = match parse_graph6(text) {
        Ok(g) => g,
        Err(e) => {
            rec.error = Some(e.to_string());
            return Some(rec);
        }
    };
    if opts.min_n.is_some_and(|m| g.n() < m) || opts.max_n.is_some_and(|m| g.n() > m) {
        return None;
    }
    rec.n = Some(g.n());
    let so = SearchOptions { prune: true, budget: opts.budget.clone(), jobs: 1 };
    if opts.check != CatalogCheck::Regular {
        rec.gap = Some(search_gap_order(&g, &so));
    }
    if opts.check != CatalogCheck::Gap {
        rec.regular = Some(search_regular_order(&g, &so));
    }
    Some(rec)
}

/// Runs the chosen checks on each graph6 line and hands the records to
/// `emit` in input order. Blank lines and graphs outside the size filter
/// produce no record; unparsable lines produce an error record. Returns
/// the number of records.
pub fn run_catalog<R: BufRead>(
    input: R,
    opts: &CatalogOptions,
    mut emit: impl FnMut(&CatalogRecord),
) -> io::Result<usize> {
    let jobs = opts.jobs.max(1);
    let pool = (jobs > 1)
        .then(|| rayon::ThreadPoolBuilder::new().num_threads(jobs).build())
        .transpose()
        .map_err(io::Error::other)?;
    let mut count = 0;
    let mut batch: Vec<(usize, String)> = Vec::new();
    let mut flush = |batch: &mut Vec<(usize, String)>, count: &mut usize| {
        let recs: Vec<Option<CatalogRecord>> = match &pool {
            Some(p) => p.install(|| batch.par_iter().map(|(i, t)| process(*i, t, opts)).collect()),
            None => batch.iter().map(|(i, t)| process(*i, t, opts)).collect(),
        };
        for r in recs.into_iter().flatten() {
            emit(&r);
            *count += 1;
        }
        batch.clear();
    };
    for (i, line) in input.lines().enumerate().skip(opts.skip_lines) {
        batch.push((i + 1, line?));
        if batch.len() >= 8 * jobs {
            flush(&mut batch, &mut count);
        }
    }
    flush(&mut batch, &mut count);
    Ok(count)
}

fn key(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
}

/// One representative of each isomorphism class of graphs on `n` vertices,
/// by adding edges to canonical forms level by level.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut level: BTreeSet<Vec<(usize, usize)>> = BTreeSet::from([Vec::new()]);
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for edges in &level {
            let g = Graph::from_edges(n, edges).expect("canonical edges");
            for (u, v) in g.non_edges() {
                let mut h = g.clone();
                h.add_edge(u, v).expect("non-edge");
                next.insert(key(&canonical_form(&h)));
            }
            out.push(g);
        }
        level = next;
    }
    out
}

/// Connected simple cubic graphs on `n` vertices (`n` even, `n >= 4`):
/// fill the lowest deficient vertex, bringing in fresh vertices in index
/// order (which keeps the graph connected), then drop isomorphs.
pub fn connected_cubic_graphs(n: usize) -> Vec<Graph> {
    fn rec(g: &mut Graph, fresh: usize, out: &mut BTreeSet<Vec<(usize, usize)>>) {
        let n = g.n();
        let Some(v) = (0..n).find(|&v| g.degree(v) < 3) else {
            out.insert(key(&canonical_form(g)));
            return;
        };
        if v >= fresh {
            return;
        }
        let need = 3 - g.degree(v);
        let touched: Vec<usize> = (v + 1..fresh).filter(|&w| g.degree(w) < 3 && !g.has_edge(v, w)).collect();
        for k in 0..=need.min(n - fresh) {
            let old = need - k;
            if old > touched.len() {
                continue;
            }
            for pick in combinations(&touched, old) {
                let partners: Vec<usize> = pick.into_iter().chain(fresh..fresh + k).collect();
                for &w in &partners {
                    g.add_edge(v, w).expect("new edge");
                }
                rec(g, fresh + k, out);
                for &w in &partners {
                    g.remove_edge(v, w);
                }
            }
        }
    }
    if n < 4 || n % 2 == 1 {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    rec(&mut Graph::empty(n), 1, &mut out);
    out.into_iter().map(|e| Graph::from_edges(n, &e).expect("canonical edges")).collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = combinations(&items[1..], k - 1);
    for c in &mut with {
        c.insert(0, items[0]);
    }
    with.extend(combinations(&items[1..], k));
    with
}
