//! "Some circular order satisfies the gap condition" as CNF.
//!
//! Order variables `B(a, b)` (`a < b`) say `a` precedes `b` in the linear
//! order read clockwise from vertex 0, which is forced first. Transitivity
//! forbids 3-cycles. For `a < b < c`, `Y(a, b, c)` says the three lie
//! clockwise in that cyclic order; it is the majority of `B(a,b)`,
//! `B(b,c)`, `¬B(a,c)`. A candidate variable `C(s, t, v)` asserts that the
//! cut right after `v` on the clockwise arc `[s, t]` is spanned by no edge.
//! Each non-edge needs one candidate on either side.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Instant;

use super::{Budget, Side};
use crate::graph::{CircularOrder, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarTag {
    /// `a < b`: `a` comes before `b`.
    Before(usize, usize),
    /// `a < b < c`: clockwise cyclic order `a, b, c`.
    Cyclic(usize, usize, usize),
    /// Non-edge `x < y`; open cut right after `v` on the given side.
    Candidate { x: usize, y: usize, side: Side, v: usize },
}

impl VarTag {
    fn describe(&self) -> String {
        match *self {
            VarTag::Before(a, b) => format!("before {a} {b}"),
            VarTag::Cyclic(a, b, c) => format!("cyclic {a} {b} {c}"),
            VarTag::Candidate { x, y, side, v } => format!("candidate {x} {y} {} {v}", side.as_str()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub n: usize,
    /// Variable `i + 1` has tag `vars[i]`.
    pub vars: Vec<VarTag>,
    pub clauses: Vec<Vec<i32>>,
    index: HashMap<VarTag, i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// `model[i]` is the value of variable `i + 1`.
    Sat(Vec<bool>),
    Unsat,
    BudgetExceeded,
}

/// A literal that may have been decided already by the structure.
#[derive(Clone, Copy)]
enum Lit {
    True,
    False,
    Var(i32),
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, tag: &VarTag) -> Option<i32> {
        self.index.get(tag).copied()
    }

    fn add_var(&mut self, tag: VarTag) -> i32 {
        self.vars.push(tag);
        let id = self.vars.len() as i32;
        self.index.insert(tag, id);
        id
    }

    /// `a` precedes `b`.
    fn before(&self, a: usize, b: usize) -> i32 {
        if a < b {
            self.index[&VarTag::Before(a, b)]
        } else {
            -self.index[&VarTag::Before(b, a)]
        }
    }

    /// `b` lies strictly inside the clockwise arc from `a` to `c`.
    fn cyclic(&self, a: usize, b: usize, c: usize) -> i32 {
        let mut t = [a, b, c];
        let mut swaps = 0;
        for i in 0..3 {
            for j in 0..2 - i {
                if t[j] > t[j + 1] {
                    t.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        let y = self.index[&VarTag::Cyclic(t[0], t[1], t[2])];
        if swaps % 2 == 0 {
            y
        } else {
            -y
        }
    }

    /// `u` in the closed clockwise arc `[s, v]`.
    fn in_closed(&self, s: usize, v: usize, u: usize) -> Lit {
        if u == s || u == v {
            Lit::True
        } else if s == v {
            Lit::False
        } else {
            Lit::Var(self.cyclic(s, u, v))
        }
    }

    /// `w` in the half-open clockwise arc `(v, t]`, for `v != t`.
    fn in_after(&self, v: usize, t: usize, w: usize) -> Lit {
        if w == v {
            Lit::False
        } else if w == t {
            Lit::True
        } else {
            Lit::Var(self.cyclic(v, w, t))
        }
    }

    /// The order encoded by a model of the order variables.
    pub fn decode(&self, model: &[bool]) -> Option<CircularOrder> {
        let value = |lit: i32| model[lit.unsigned_abs() as usize - 1] == (lit > 0);
        let mut rank: Vec<(usize, usize)> =
            (0..self.n).map(|v| ((0..self.n).filter(|&u| u != v && value(self.before(u, v))).count(), v)).collect();
        rank.sort_unstable();
        if rank.iter().enumerate().any(|(i, &(r, _))| i != r) {
            return None;
        }
        CircularOrder::new(rank.into_iter().map(|(_, v)| v).collect()).ok()
    }

    /// Does `model` satisfy every clause?
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0)))
    }
}

/// Encodes the gap condition with an existential circular order.
pub fn encode_cnf(g: &Graph) -> CnfInstance {
    let n = g.n();
    let mut c = CnfInstance { n, vars: Vec::new(), clauses: Vec::new(), index: HashMap::new() };
    for a in 0..n {
        for b in a + 1..n {
            c.add_var(VarTag::Before(a, b));
        }
    }
    for b in 1..n {
        c.clauses.push(vec![c.before(0, b)]);
    }
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let (ab, bd, ad) = (c.before(a, b), c.before(b, d), c.before(a, d));
                c.clauses.push(vec![-ab, -bd, ad]);
                c.clauses.push(vec![ab, bd, -ad]);
                let y = c.add_var(VarTag::Cyclic(a, b, d));
                let m = [ab, bd, -ad];
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    c.clauses.push(vec![-y, m[i], m[j]]);
                    c.clauses.push(vec![y, -m[i], -m[j]]);
                }
            }
        }
    }
    let mut directed: Vec<(usize, usize)> = Vec::new();
    for (u, w) in g.edges() {
        directed.push((u, w));
        directed.push((w, u));
    }
    for (x, y) in g.non_edges() {
        let mut any = Vec::new();
        for (side, s, t) in [(Side::Forward, x, y), (Side::Backward, y, x)] {
            for v in (0..n).filter(|&v| v != t) {
                let cv = c.add_var(VarTag::Candidate { x, y, side, v });
                any.push(cv);
                if v != s {
                    c.clauses.push(vec![-cv, c.cyclic(s, v, t)]);
                }
                for &(u, w) in &directed {
                    let mut clause = vec![-cv];
                    let mut skip = false;
                    for lit in [c.in_closed(s, v, u), c.in_after(v, t, w)] {
                        match lit {
                            Lit::False => skip = true,
                            Lit::True => {}
                            Lit::Var(l) => clause.push(-l),
                        }
                    }
                    if !skip {
                        c.clauses.push(clause);
                    }
                }
            }
        }
        c.clauses.push(any);
    }
    c
}

/// DIMACS text: comment lines naming the variables, header, clauses.
pub fn write_dimacs(c: &CnfInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c gap condition, n = {}", c.n);
    for (i, tag) in c.vars.iter().enumerate() {
        let _ = writeln!(out, "c var {} {}", i + 1, tag.describe());
    }
    let _ = writeln!(out, "p cnf {} {}", c.vars.len(), c.clauses.len());
    for clause in &c.clauses {
        for l in clause {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Strict DIMACS reader: comments before a single `p cnf V C` header, then
/// exactly `C` zero-terminated clauses over variables `1..=V`.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>), String> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let no = no + 1;
        if line.starts_with('c') && header.is_none() {
            if line.len() > 1 && !line.starts_with("c ") {
                return Err(format!("line {no}: malformed comment"));
            }
            continue;
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(format!("line {no}: bad header {line:?}"));
            }
            let v = f[2].parse().map_err(|_| format!("line {no}: bad variable count"))?;
            let k = f[3].parse().map_err(|_| format!("line {no}: bad clause count"))?;
            header = Some((v, k));
            continue;
        }
        let (nv, _) = header.ok_or_else(|| format!("line {no}: clause before header"))?;
        if line.trim().is_empty() {
            return Err(format!("line {no}: blank line"));
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| format!("line {no}: bad literal {tok:?}"))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() as usize > nv {
                return Err(format!("line {no}: literal {l} exceeds {nv} variables"));
            } else {
                current.push(l);
            }
        }
    }
    let (nv, nc) = header.ok_or("missing header")?;
    if !current.is_empty() {
        return Err("last clause is not terminated".into());
    }
    if clauses.len() != nc {
        return Err(format!("header declares {nc} clauses, found {}", clauses.len()));
    }
    Ok((nv, clauses))
}

/// DPLL with two-watched-literal unit propagation; branches on the lowest
/// unassigned variable, false first.
pub fn solve_clauses(num_vars: usize, clauses: &[Vec<i32>], budget: &Budget) -> SolveOutcome {
    let start = Instant::now();
    let code = |l: i32| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0);
    // value[v]: 0 unassigned, 1 true, 2 false.
    let mut value = vec![0u8; num_vars];
    let lit_val = |value: &[u8], l: usize| match value[l / 2] {
        0 => 0,
        x => {
            if (x == 1) == l.is_multiple_of(2) {
                1
            } else {
                2
            }
        }
    };
    let mut trail: Vec<usize> = Vec::new();
    let mut cls: Vec<Vec<usize>> = Vec::new();
    for c in clauses {
        let mut c: Vec<usize> = c.iter().map(|&l| code(l)).collect();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] / 2 == w[1] / 2) {
            continue;
        }
        if c.is_empty() {
            return SolveOutcome::Unsat;
        }
        cls.push(c);
    }
    let mut watches: Vec<Vec<usize>> = vec![Vec::new(); 2 * num_vars];
    let mut units = Vec::new();
    for (i, c) in cls.iter().enumerate() {
        if c.len() == 1 {
            units.push(c[0]);
        } else {
            watches[c[0]].push(i);
            watches[c[1]].push(i);
        }
    }
    let assign = |value: &mut [u8], trail: &mut Vec<usize>, l: usize| {
        value[l / 2] = if l.is_multiple_of(2) { 1 } else { 2 };
        trail.push(l);
    };
    for l in units {
        match lit_val(&value, l) {
            2 => return SolveOutcome::Unsat,
            0 => assign(&mut value, &mut trail, l),
            _ => {}
        }
    }
    // Decision levels: trail index and whether the flip was tried.
    let mut decisions: Vec<(usize, bool)> = Vec::new();
    let mut head = 0;
    let mut nodes: u64 = 0;
    loop {
        // Propagate.
        let mut conflict = false;
        while head < trail.len() && !conflict {
            let falsified = trail[head] ^ 1;
            head += 1;
            let mut ws = std::mem::take(&mut watches[falsified]);
            let mut i = 0;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut cls[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                if lit_val(&value, c[0]) == 1 {
                    i += 1;
                    continue;
                }
                if let Some(k) = (2..c.len()).find(|&k| lit_val(&value, c[k]) != 2) {
                    c.swap(1, k);
                    watches[c[1]].push(ci);
                    ws.swap_remove(i);
                    continue;
                }
                match lit_val(&value, c[0]) {
                    0 => {
                        let l = c[0];
                        assign(&mut value, &mut trail, l);
                    }
                    2 => {
                        conflict = true;
                        break;
                    }
                    _ => {}
                }
                i += 1;
            }
            watches[falsified].append(&mut ws);
        }
        if conflict {
            // Backtrack to the last decision whose flip is untried.
            loop {
                let Some((at, flipped)) = decisions.pop() else { return SolveOutcome::Unsat };
                let l = trail[at];
                for &u in &trail[at..] {
                    value[u / 2] = 0;
                }
                trail.truncate(at);
                head = at;
                if !flipped {
                    decisions.push((at, true));
                    assign(&mut value, &mut trail, l ^ 1);
                    break;
                }
            }
            continue;
        }
        nodes += 1;
        if nodes.is_multiple_of(256) {
            let over_nodes = budget.max_nodes.is_some_and(|m| nodes > m);
            let over_time = budget.max_time.is_some_and(|t| start.elapsed() >= t);
            if over_nodes || over_time {
                return SolveOutcome::BudgetExceeded;
            }
        }
        let Some(v) = (0..num_vars).find(|&v| value[v] == 0) else {
            return SolveOutcome::Sat(value.iter().map(|&x| x == 1).collect());
        };
        decisions.push((trail.len(), false));
        assign(&mut value, &mut trail, 2 * v + 1);
    }
}

pub fn solve_cnf(c: &CnfInstance, budget: &Budget) -> SolveOutcome {
    solve_clauses(c.num_vars(), &c.clauses, budget)
}
