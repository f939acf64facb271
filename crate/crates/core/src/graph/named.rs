use super::{Graph, GraphError};

/// Graph families that come up in the constructions and experiments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    /// `K_{1,leaves}`.
    Star(usize),
    /// Hub plus a cycle on `n - 1` rim vertices; `n` counts the hub.
    Wheel(usize),
    /// Path on `n - 1` vertices plus an apex adjacent to all of them.
    Fan(usize),
    /// Generalized Petersen graph `G(n, k)`.
    GeneralizedPetersen(usize, usize),
    /// `K_n` minus the edges of a cycle on its first `k` vertices.
    CompleteMinusCycle(usize, usize),
    /// `P_k □ P_l`: `l` copies of a `k`-path.
    Grid(usize, usize),
    Petersen,
    Dodecahedron,
    Pappus,
    /// Root with three legs of length two.
    Spider,
}

fn bad(family: &str, message: impl Into<String>) -> GraphError {
    GraphError::BadParameters { family: family.to_string(), message: message.into() }
}

fn lcf(n: usize, shifts: &[i64]) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.insert(i, (i + 1) % n);
        let s = shifts[i % shifts.len()];
        let j = (i as i64 + s).rem_euclid(n as i64) as usize;
        g.insert(i, j);
    }
    g
}

pub fn named_graph(spec: &NamedGraph) -> Result<Graph, GraphError> {
    use NamedGraph::*;
    let g = match *spec {
        Complete(n) => Graph::complete(n),
        Cycle(n) => {
            if n < 3 {
                return Err(bad("cycle", "need n >= 3"));
            }
            let mut g = Graph::empty(n);
            for i in 0..n {
                g.insert(i, (i + 1) % n);
            }
            g
        }
        Path(n) => {
            if n < 1 {
                return Err(bad("path", "need n >= 1"));
            }
            let mut g = Graph::empty(n);
            for i in 1..n {
                g.insert(i - 1, i);
            }
            g
        }
        Star(leaves) => {
            let mut g = Graph::empty(leaves + 1);
            for i in 1..=leaves {
                g.insert(0, i);
            }
            g
        }
        Wheel(n) => {
            if n < 4 {
                return Err(bad("wheel", "need n >= 4"));
            }
            let mut g = Graph::empty(n);
            for i in 1..n {
                g.insert(0, i);
                g.insert(i, if i + 1 < n { i + 1 } else { 1 });
            }
            g.set_label(0, "hub");
            g
        }
        Fan(n) => {
            if n < 3 {
                return Err(bad("fan", "need n >= 3"));
            }
            let mut g = Graph::empty(n);
            for i in 1..n {
                g.insert(0, i);
                if i + 1 < n {
                    g.insert(i, i + 1);
                }
            }
            g.set_label(0, "apex");
            g
        }
        GeneralizedPetersen(n, k) => {
            if n < 3 || k < 1 || 2 * k >= n {
                return Err(bad("gp", "need n >= 3 and 1 <= k < n/2"));
            }
            let mut g = Graph::empty(2 * n);
            for i in 0..n {
                g.insert(i, (i + 1) % n);
                g.insert(i, n + i);
                g.insert(n + i, n + (i + k) % n);
            }
            g
        }
        CompleteMinusCycle(n, k) => {
            if k < 3 || k > n {
                return Err(bad("gnk", "need 3 <= k <= n"));
            }
            let mut g = Graph::complete(n);
            for i in 0..k {
                g.remove_edge(i, (i + 1) % k);
            }
            for i in 0..k {
                g.set_label(i, format!("v{}", i + 1));
            }
            g
        }
        Grid(k, l) => {
            if k < 2 || l < 2 {
                return Err(bad("grid", "need k, l >= 2"));
            }
            let mut g = Graph::empty(k * l);
            for r in 0..l {
                for c in 0..k {
                    let v = r * k + c;
                    if c + 1 < k {
                        g.insert(v, v + 1);
                    }
                    if r + 1 < l {
                        g.insert(v, v + k);
                    }
                    g.set_label(v, format!("({r},{c})"));
                }
            }
            g
        }
        Petersen => return named_graph(&GeneralizedPetersen(5, 2)),
        Dodecahedron => lcf(20, &[10, 7, 4, -4, -7, 10, -4, 7, -7, 4]),
        Pappus => lcf(18, &[5, 7, -7, 7, -7, -5]),
        Spider => {
            // c = 0; children l, m, r = 1, 2, 3; grandchildren 4, 5, 6.
            Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])?
        }
    };
    Ok(g)
}

/// Parses `family` or `family:a,b` (e.g. `wheel:6`, `gp:11,2`, `grid:5,3`).
pub fn parse_named(text: &str) -> Result<NamedGraph, GraphError> {
    let (name, args) = match text.split_once(':') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    let nums: Vec<usize> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| bad(name, format!("bad integer `{s}`"))))
            .collect::<Result<_, _>>()?
    };
    let want = |k: usize| -> Result<(), GraphError> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(bad(name, format!("expected {k} parameter(s)")))
        }
    };
    let spec = match name.to_ascii_lowercase().as_str() {
        "complete" | "k" => {
            want(1)?;
            NamedGraph::Complete(nums[0])
        }
        "cycle" | "c" => {
            want(1)?;
            NamedGraph::Cycle(nums[0])
        }
        "path" | "p" => {
            want(1)?;
            NamedGraph::Path(nums[0])
        }
        "star" => {
            want(1)?;
            NamedGraph::Star(nums[0])
        }
        "wheel" | "w" => {
            want(1)?;
            NamedGraph::Wheel(nums[0])
        }
        "fan" => {
            want(1)?;
            NamedGraph::Fan(nums[0])
        }
        "gp" => {
            want(2)?;
            NamedGraph::GeneralizedPetersen(nums[0], nums[1])
        }
        "gnk" => {
            want(2)?;
            NamedGraph::CompleteMinusCycle(nums[0], nums[1])
        }
        "grid" => {
            want(2)?;
            NamedGraph::Grid(nums[0], nums[1])
        }
        "petersen" => {
            want(0)?;
            NamedGraph::Petersen
        }
        "dodecahedron" => {
            want(0)?;
            NamedGraph::Dodecahedron
        }
        "pappus" => {
            want(0)?;
            NamedGraph::Pappus
        }
        "spider" | "y" => {
            want(0)?;
            NamedGraph::Spider
        }
        _ => return Err(GraphError::UnknownFamily(name.to_string())),
    };
    // Validate eagerly so callers get parameter errors here.
    named_graph(&spec)?;
    Ok(spec)
}
