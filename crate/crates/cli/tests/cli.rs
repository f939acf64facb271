use std::fs;
use std::process::{Command, Output};

use oor_core::gap::parse_dimacs;
use oor_core::geom::Placement;
use oor_core::graph::{named_graph, write_graph6, NamedGraph};
use serde_json::Value;

fn oor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oor")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn g6(spec: NamedGraph) -> String {
    write_graph6(&named_graph(&spec).unwrap())
}

#[test]
fn construct_triangle() {
    let out = oor(&["construct", "--class", "two-tree", "--graph6", &g6(NamedGraph::Complete(3))]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["report"]["valid"], true);
    let pl = Placement::from_json_str(&doc["placement"].to_string()).unwrap();
    assert_eq!(pl.n(), 3);
    assert_eq!(pl.to_json(), doc["placement"]);
}

#[test]
fn construct_classes() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let cases: Vec<Vec<String>> = vec![
        vec!["--class".into(), "grid".into(), "--k".into(), "4".into(), "--l".into(), "3".into()],
        vec!["--class".into(), "gnk".into(), "--n".into(), "8".into(), "--k".into(), "4".into()],
        vec!["--class".into(), "cactus".into(), "--named".into(), "cycle:7".into(), "--mode".into(), "generic".into()],
        vec![
            "--class".into(),
            "caterpillar-complement".into(),
            "--graph6".into(),
            g6(NamedGraph::Path(6)).complement_g6(),
        ],
        vec![
            "--class".into(),
            "outerpath".into(),
            "--named".into(),
            "fan:6".into(),
            "--order".into(),
            "0,1,2,3,4,5".into(),
        ],
        vec!["--class".into(), "cnp".into(), "--named".into(), "cycle:4".into(), "--order".into(), "0,2,1,3".into()],
        vec![
            "--class".into(),
            "partial-two-tree".into(),
            "--named".into(),
            "path:5".into(),
            "--trace".into(),
            trace.display().to_string(),
        ],
    ];
    for case in cases {
        let mut args = vec!["construct"];
        args.extend(case.iter().map(String::as_str));
        let out = oor(&args);
        assert_eq!(code(&out), 0, "{case:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json_of(&out)["report"]["valid"], true);
    }
    let t: Value = serde_json::from_str(&fs::read_to_string(trace).unwrap()).unwrap();
    assert!(t["steps"].is_array());
    let out = oor(&["construct", "--class", "gnk", "--n", "8", "--k", "5"]);
    assert_eq!(code(&out), 2);
    let out = oor(&["construct", "--class", "two-tree", "--named", "cycle:5"]);
    assert_eq!(code(&out), 2);
}

trait ComplementG6 {
    fn complement_g6(&self) -> String;
}

impl ComplementG6 for String {
    fn complement_g6(&self) -> String {
        write_graph6(&oor_core::graph::parse_graph6(self).unwrap().complement())
    }
}

#[test]
fn petersen_is_exhausted() {
    let out = oor(&["search", "--gap", "--named", "petersen"]);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    assert_eq!(doc["status"], "exhausted");
    assert_eq!(doc["orders_examined"], 181_440);
    let out = oor(&["search", "--cnf", "--named", "petersen"]);
    assert_eq!((code(&out), json_of(&out)["status"].clone()), (1, Value::from("exhausted")));
}

#[test]
fn tampered_placement_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.json");
    // C4 drawn as a bow-tie: order 0,2,1,3 around the square.
    let good = r#"{"mode":"rational","n":4,"points":[{"x":"0","y":"0"},{"x":"1","y":"1"},{"x":"1","y":"0"},{"x":"0","y":"1"}]}"#;
    fs::write(&path, good).unwrap();
    let args = ["verify", "--named", "cycle:4", "--placement", path.to_str().unwrap()];
    assert_eq!(code(&oor(&args)), 0);
    // Moving vertex 1 turns the drawing into the square 0,1,2,3.
    fs::write(&path, good.replace(r#"{"x":"1","y":"1"},{"x":"1","y":"0"}"#, r#"{"x":"1","y":"0"},{"x":"1","y":"1"}"#))
        .unwrap();
    let out = oor(&args);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["valid"], false);
    fs::write(&path, "{not json").unwrap();
    assert_eq!(code(&oor(&args)), 2);
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["gap", "--named", "cycle:4", "--order", "0,2,1,3"], 0),
        (&["gap", "--named", "cycle:4", "--order", "0,1,2,3"], 1),
        (&["gap", "--named", "cycle:4", "--order", "0,1,2"], 2),
        (&["search", "--regular", "--named", "cycle:6"], 0),
        (&["search", "--regular", "--named", "wheel:6"], 1),
        (&["search", "--gap", "--named", "wheel:6", "--jobs", "3"], 1),
        (&["search", "--gap", "--named", "petersen", "--no-prune", "--max-nodes", "1000"], 2),
        (&["search", "--gap", "--graph6", "~~~bad"], 2),
        (&["search", "--gap"], 2),
        (&["search", "--gap", "--named", "k:3", "--named", "k:4"], 2),
        (&["construct", "--class", "hypercube", "--named", "k:3"], 2),
        (&["verify", "--named", "k:4", "--order", "0,1,2,3"], 0),
        (&["verify", "--named", "cycle:4", "--order", "0,1,2,3", "--gaps"], 1),
        (&["render", "--named", "k:3"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, want) in cases {
        let out = oor(args);
        assert_eq!(code(&out), *want, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if *want == 2 {
            assert!(!out.stderr.is_empty() || !out.stdout.is_empty());
        }
    }
}

#[test]
fn catalog_lines_in_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    let lines = [g6(NamedGraph::Wheel(6)), "??bad line".into(), g6(NamedGraph::Cycle(6)), g6(NamedGraph::Complete(4))];
    fs::write(&input, lines.join("\n") + "\n").unwrap();
    let out = oor(&["catalog", "--input", input.to_str().unwrap(), "--check", "both", "--jobs", "3"]);
    assert_eq!(code(&out), 0);
    let recs: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let status: Vec<&str> = recs.iter().map(|r| r["status"].as_str().unwrap()).collect();
    assert_eq!(status, ["exhausted", "error", "found", "found"]);
    assert_eq!(recs.iter().map(|r| r["line"].as_u64().unwrap()).collect::<Vec<_>>(), [1, 2, 3, 4]);
    let out = oor(&["catalog", "--input", input.to_str().unwrap(), "--skip", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
    let empty = dir.path().join("empty.g6");
    fs::write(&empty, "").unwrap();
    let out = oor(&["catalog", "--input", empty.to_str().unwrap()]);
    assert_eq!((code(&out), out.stdout.len()), (0, 0));
    assert_eq!(code(&oor(&["catalog", "--input", "/nonexistent/x.g6"])), 2);
}

#[test]
fn render_and_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("grid.svg");
    let out = oor(&[
        "render",
        "--named",
        "grid:5,3",
        "--order",
        "4,2,0,1,3,9,7,5,6,8,14,12,10,11,13",
        "--verify",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="vertex""#).count(), 15);
    let out = oor(&["search", "--named", "cycle:5", "--dimacs", "-"]);
    assert_eq!(code(&out), 0);
    let (nv, clauses) = parse_dimacs(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(nv > 0 && !clauses.is_empty());
}
