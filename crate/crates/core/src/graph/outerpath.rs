use std::collections::HashMap;

use super::{CircularOrder, Graph, GraphError};

/// Triangulated outerpath drawing with its weak-dual path and the
/// derived insertion sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterpathStructure {
    /// Hamiltonian cyclic order (the outerplanar embedding).
    pub order: CircularOrder,
    /// Internal edges of the triangulated drawing, `(u, v)` with `u < v`.
    pub chords: Vec<(usize, usize)>,
    /// Edges of the triangulated drawing that are absent from the input
    /// (triangulating chords and missing hull edges).
    pub added_edges: Vec<(usize, usize)>,
    /// `t_1 .. t_{n-2}` along the weak dual.
    pub triangles: Vec<[usize; 3]>,
    /// `v_1 .. v_n`.
    pub sequence: Vec<usize>,
    /// `attachments[i]` is `v_j` of the edge `e_{i+1} = v_{i+1} v_j`
    /// (1-based `4 <= i+1 < n`), otherwise `None`.
    pub attachments: Vec<Option<usize>>,
}

impl OuterpathStructure {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Degrees in the weak dual (triangles sharing an edge).
    pub fn dual_degrees(&self) -> Vec<usize> {
        let t = &self.triangles;
        (0..t.len())
            .map(|i| (0..t.len()).filter(|&j| j != i && t[i].iter().filter(|v| t[j].contains(v)).count() == 2).count())
            .collect()
    }

    /// The maximal outerplanar graph of the triangulated drawing.
    pub fn triangulated_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if !g.has_edge(a, b) {
                    g.insert(a, b);
                }
            }
        }
        g
    }
}

fn bad(message: impl Into<String>) -> GraphError {
    GraphError::BadOuterpath(message.into())
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Splits the face `f` (positions in cyclic order) along the chord `(a, b)`.
fn split(f: &[usize], a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
    let ia = f.iter().position(|&x| x == a).unwrap();
    let ib = f.iter().position(|&x| x == b).unwrap();
    let (i, j) = (ia.min(ib), ia.max(ib));
    let first = f[i..=j].to_vec();
    let mut second = f[j..].to_vec();
    second.extend_from_slice(&f[..=i]);
    (first, second)
}

fn boundary(f: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..f.len()).map(move |i| key(f[i], f[(i + 1) % f.len()]))
}

/// Fans the face `f` so that `prev` lies in the first and `next` in the
/// last triangle. Apex candidates are tried starting with the endpoints
/// of `next` (the successor face), then of `prev`.
fn fan(f: &[usize], prev: Option<(usize, usize)>, next: Option<(usize, usize)>) -> Option<Vec<[usize; 3]>> {
    let k = f.len();
    if k == 3 {
        return Some(vec![[f[0], f[1], f[2]]]);
    }
    let mut candidates: Vec<usize> = Vec::with_capacity(k);
    for c in [next, prev].into_iter().flatten() {
        for x in [c.0, c.1] {
            if !candidates.contains(&x) {
                candidates.push(x);
            }
        }
    }
    for &x in f {
        if !candidates.contains(&x) {
            candidates.push(x);
        }
    }
    for x in candidates {
        let ix = f.iter().position(|&y| y == x).unwrap();
        let r: Vec<usize> = (0..k).map(|s| f[(ix + s) % k]).collect();
        let tri_of = |e: (usize, usize)| -> usize {
            if e == key(x, r[1]) {
                0
            } else if e == key(x, r[k - 1]) {
                k - 3
            } else {
                (1..k - 1).find(|&s| key(r[s], r[s + 1]) == e).map(|s| s - 1).expect("edge on face boundary")
            }
        };
        let mut tris: Vec<[usize; 3]> = (1..k - 1).map(|s| [x, r[s], r[s + 1]]).collect();
        let last = k - 3;
        let (tp, tq) = (prev.map(tri_of), next.map(tri_of));
        let forward = match (tp, tq) {
            (Some(p), Some(q)) if p == 0 && q == last => true,
            (Some(p), Some(q)) if p == last && q == 0 => false,
            (Some(_), Some(_)) => continue,
            (Some(p), None) if p == 0 || p == last => p == 0,
            (None, Some(q)) if q == 0 || q == last => q == last,
            (None, None) => true,
            _ => continue,
        };
        if !forward {
            tris.reverse();
        }
        return Some(tris);
    }
    None
}

/// Checks that `order` is an outerplanar embedding of `g` whose internal
/// faces can be fan-triangulated into a path of triangles, and derives
/// the insertion sequence `v_1 .. v_n` with attachment edges.
pub fn validate_outerpath(g: &Graph, order: &CircularOrder) -> Result<OuterpathStructure, GraphError> {
    let n = g.n();
    if order.len() != n {
        return Err(bad(format!("order has {} vertices, graph has {n}", order.len())));
    }
    if n < 3 {
        return Err(bad("need at least three vertices"));
    }
    // Work with positions on the circle.
    let pos = |v: usize| order.position(v);
    let is_hull = |a: usize, b: usize| (a + 1) % n == b || (b + 1) % n == a;
    let mut chords: Vec<(usize, usize)> =
        g.edges().into_iter().map(|(u, v)| key(pos(u), pos(v))).filter(|&(a, b)| !is_hull(a, b)).collect();
    chords.sort_unstable();
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Err(bad(format!(
                    "chords {}-{} and {}-{} cross",
                    order.at(a),
                    order.at(b),
                    order.at(c),
                    order.at(d)
                )));
            }
        }
    }

    let mut faces: Vec<Vec<usize>> = vec![(0..n).collect()];
    for &(a, b) in &chords {
        let fi =
            faces.iter().position(|f| f.contains(&a) && f.contains(&b)).expect("non-crossing chord lies in one face");
        let (f1, f2) = split(&faces[fi], a, b);
        faces[fi] = f1;
        faces.push(f2);
    }
    let mut by_chord: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for e in boundary(f) {
            if !is_hull(e.0, e.1) {
                by_chord.entry(e).or_default().push(i);
            }
        }
    }
    let mut nbrs: Vec<Vec<((usize, usize), usize)>> = vec![Vec::new(); faces.len()];
    for (&e, fs) in &by_chord {
        debug_assert_eq!(fs.len(), 2);
        nbrs[fs[0]].push((e, fs[1]));
        nbrs[fs[1]].push((e, fs[0]));
    }
    for nb in &mut nbrs {
        nb.sort_unstable();
    }
    if let Some(i) = (0..faces.len()).find(|&i| nbrs[i].len() > 2) {
        return Err(bad(format!("internal face {i} has {} neighbors", nbrs[i].len())));
    }

    // Walk the dual path from its lowest end.
    let start = (0..faces.len()).find(|&i| nbrs[i].len() <= 1).unwrap();
    let mut walk: Vec<(usize, Option<(usize, usize)>, Option<(usize, usize)>)> = Vec::new();
    let mut prev_face = usize::MAX;
    let mut prev_chord = None;
    let mut cur = start;
    loop {
        let next = nbrs[cur].iter().find(|&&(_, f)| f != prev_face).copied();
        walk.push((cur, prev_chord, next.map(|(e, _)| e)));
        match next {
            Some((e, f)) => {
                prev_face = cur;
                prev_chord = Some(e);
                cur = f;
            }
            None => break,
        }
    }
    let mut triangles_pos: Vec<[usize; 3]> = Vec::with_capacity(n - 2);
    for &(f, p, q) in &walk {
        let tris = fan(&faces[f], p, q).ok_or_else(|| bad(format!("no fan of face {f} keeps the weak dual a path")))?;
        triangles_pos.extend(tris);
    }
    debug_assert_eq!(triangles_pos.len(), n - 2);

    let triangles: Vec<[usize; 3]> =
        triangles_pos.iter().map(|t| [order.at(t[0]), order.at(t[1]), order.at(t[2])]).collect();
    let mut all_chords: Vec<(usize, usize)> = Vec::new();
    for w in triangles.windows(2) {
        let shared: Vec<usize> = w[0].iter().copied().filter(|v| w[1].contains(v)).collect();
        all_chords.push(key(shared[0], shared[1]));
    }
    all_chords.sort_unstable();
    let mut added_edges: Vec<(usize, usize)> = all_chords.iter().copied().filter(|&(u, v)| !g.has_edge(u, v)).collect();
    for i in 0..n {
        let (u, v) = key(order.at(i), order.at((i + 1) % n));
        if !g.has_edge(u, v) {
            added_edges.push((u, v));
        }
    }
    added_edges.sort_unstable();

    let (sequence, attachments) = derive_sequence(&triangles, order);
    Ok(OuterpathStructure { order: order.clone(), chords: all_chords, added_edges, triangles, sequence, attachments })
}

fn derive_sequence(t: &[[usize; 3]], order: &CircularOrder) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = t.len() + 2;
    let v1 = if t.len() == 1 {
        t[0].iter().copied().min_by_key(|&v| order.position(v)).unwrap()
    } else {
        t[0].iter().copied().find(|v| !t[1].contains(v)).unwrap()
    };
    // v_2, v_3 follow v_1 in the direction of the cyclic order.
    let mut rest: Vec<usize> = t[0].iter().copied().filter(|&v| v != v1).collect();
    rest.sort_by_key(|&v| (order.position(v) + n - order.position(v1)) % n);
    let mut seq = vec![v1, rest[0], rest[1]];
    for i in 1..t.len() {
        seq.push(t[i].iter().copied().find(|v| !t[i - 1].contains(v)).unwrap());
    }
    let mut att = vec![None; n];
    // 1-based i in 4..n: e_i is the chord t_{i-2} ∩ t_{i-1}.
    for i in 4..n {
        let vi = seq[i - 1];
        let (a, b) = (t[i - 3], t[i - 2]);
        let vj = a
            .iter()
            .copied()
            .find(|&x| x != vi && b.contains(&x))
            .expect("consecutive triangles share an edge through v_i");
        att[i - 1] = Some(vj);
    }
    (seq, att)
}
