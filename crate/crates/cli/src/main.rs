//! `oor`: construct, verify, search and draw outside-obstacle representations.
//!
//! Exit codes: 0 positive result, 1 negative result (invalid, gap condition
//! fails, exhausted), 2 usage, input or operational error (including an
//! exceeded budget).

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oor_core::constructors::{
    construct_cactus_order, construct_caterpillar_complement_order, construct_cnp_order, construct_grid_order,
    construct_kn_minus_ck_order, construct_outerpath_order, construct_partial_two_tree, construct_two_tree,
    kn_minus_ck_cover,
};
use oor_core::gap::{
    candidate_gaps, encode_cnf, gap_condition, run_catalog, search_gap_order, search_regular_order, solve_cnf,
    write_dimacs, Budget, CatalogCheck, CatalogOptions, SearchOptions, SearchStatus, SolveOutcome,
};
use oor_core::geom::{cocircular_placement, regular_placement, Placement};
use oor_core::graph::{
    block_cut_tree, is_two_tree, named_graph, parse_graph6, parse_named, two_tree_plan, validate_outerpath,
    write_graph6, CircularOrder, Graph, NamedGraph,
};
use oor_core::render::render_svg;
use oor_core::verifier::{check_cnp, materialize_obstacle, verify_convex_gaps, verify_oor, VerificationReport};

#[derive(Parser)]
#[command(
    name = "oor",
    version,
    about = "Outside-obstacle representations: exact construction, verification and search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an order or placement for a graph class and verify it.
    Construct(ConstructArgs),
    /// Verify a placement (or an order drawn on a circle).
    Verify(VerifyArgs),
    /// Evaluate the gap condition for a given circular order.
    Gap(GapArgs),
    /// Search circular orders (gap condition or regular OOR), or use the CNF.
    Search(SearchArgs),
    /// Run a search over a graph6 catalog; JSON lines, one per graph.
    Catalog(CatalogArgs),
    /// Draw a placement as SVG.
    Render(RenderArgs),
}

#[derive(Args, Clone, Default)]
struct GraphInput {
    /// Graph in graph6 format.
    #[arg(long, value_name = "G6")]
    graph6: Option<String>,
    /// File holding one graph6 line.
    #[arg(long, value_name = "PATH")]
    graph6_file: Option<PathBuf>,
    /// Named graph, e.g. `petersen`, `cycle:6`, `grid:5,3`, `gnk:8,5`.
    #[arg(long, value_name = "SPEC")]
    named: Option<String>,
}

#[derive(Args, Clone)]
struct OrderPlacement {
    /// Clockwise vertex order, comma separated.
    #[arg(long, value_name = "LIST")]
    order: Option<String>,
    /// Placement JSON file.
    #[arg(long, value_name = "PATH")]
    placement: Option<PathBuf>,
    /// How to place `--order` on a circle.
    #[arg(long, value_enum, default_value_t = Mode::Regular)]
    mode: Mode,
    /// Selects the cocircular perturbation sequence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Regular,
    Cocircular,
    Generic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Class {
    TwoTree,
    PartialTwoTree,
    Cactus,
    Grid,
    Outerpath,
    CaterpillarComplement,
    Gnk,
    Cnp,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    class: Class,
    #[command(flatten)]
    graph: GraphInput,
    /// Grid width `k` or `G_{n,k}` cycle length.
    #[arg(long)]
    k: Option<usize>,
    /// Grid height.
    #[arg(long)]
    l: Option<usize>,
    /// Vertex count for `gnk`.
    #[arg(long)]
    n: Option<usize>,
    /// Outerplanar order (outerpath) or certificate order (cnp).
    #[arg(long, value_name = "LIST")]
    order: Option<String>,
    /// Placement for order-based classes.
    #[arg(long, value_enum, default_value_t = Mode::Regular)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the two-tree construction trace here.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    at: OrderPlacement,
    /// Use the convex gap-region oracle instead of the arrangement.
    #[arg(long)]
    gaps: bool,
    /// Attach an explicit obstacle polygon to valid results.
    #[arg(long)]
    obstacle: bool,
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GapArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long, value_name = "LIST")]
    order: String,
    /// List every candidate gap of this non-edge, `x,y`.
    #[arg(long, value_name = "X,Y")]
    nonedge: Option<String>,
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Stop after this many search nodes.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Stop after this many milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.max_nodes, max_time: self.timeout_ms.map(Duration::from_millis) }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Search for an order satisfying the gap condition (default).
    #[arg(long, conflicts_with = "regular")]
    gap: bool,
    /// Search for a verified regular OOR.
    #[arg(long)]
    regular: bool,
    /// Decide the gap condition with the CNF encoding and internal solver.
    #[arg(long, conflicts_with = "regular")]
    cnf: bool,
    /// Write the CNF encoding in DIMACS format (`-` for stdout) and stop.
    #[arg(long, value_name = "PATH")]
    dimacs: Option<PathBuf>,
    /// Disable partial-order pruning.
    #[arg(long)]
    no_prune: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// graph6 file, one graph per line (`-` for stdin).
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    #[arg(long, value_parser = parse_check, default_value = "gap")]
    check: CatalogCheck,
    /// Skip this many input lines (resume).
    #[arg(long, default_value_t = 0)]
    skip: usize,
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    at: OrderPlacement,
    /// Verify first and highlight the verdict.
    #[arg(long)]
    verify: bool,
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn parse_check(s: &str) -> Result<CatalogCheck, String> {
    CatalogCheck::parse(s).ok_or_else(|| format!("unknown check `{s}` (gap, regular, both)"))
}

/// Operational failure: reported on stderr, exit code 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Outcome = Result<u8, Fail>;

fn read_graph(input: &GraphInput) -> Result<Graph, Fail> {
    let given = [input.graph6.is_some(), input.graph6_file.is_some(), input.named.is_some()];
    match given.iter().filter(|&&b| b).count() {
        0 => return Err(Fail("no graph given (use --graph6, --graph6-file or --named)".into())),
        1 => {}
        _ => return Err(Fail("give exactly one of --graph6, --graph6-file, --named".into())),
    }
    if let Some(text) = &input.graph6 {
        return Ok(parse_graph6(text)?);
    }
    if let Some(path) = &input.graph6_file {
        let text = fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
        let line = text.lines().find(|l| !l.trim().is_empty()).ok_or_else(|| Fail("empty graph6 file".into()))?;
        return Ok(parse_graph6(line.trim())?);
    }
    let spec = parse_named(input.named.as_deref().unwrap_or_default())?;
    Ok(named_graph(&spec)?)
}

fn has_graph(input: &GraphInput) -> bool {
    input.graph6.is_some() || input.graph6_file.is_some() || input.named.is_some()
}

fn parse_list(text: &str) -> Result<Vec<usize>, Fail> {
    text.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| Fail(format!("bad vertex `{s}` in list")))).collect()
}

fn parse_order(text: &str, n: usize) -> Result<CircularOrder, Fail> {
    let order = CircularOrder::new(parse_list(text)?)?;
    if order.len() != n {
        return Err(Fail(format!("order lists {} vertices, graph has {n}", order.len())));
    }
    Ok(order)
}

fn place(order: &CircularOrder, mode: Mode, seed: u64) -> Result<Placement, Fail> {
    Ok(match mode {
        Mode::Regular => regular_placement(order)?,
        Mode::Cocircular => cocircular_placement(order, false, seed)?,
        Mode::Generic => cocircular_placement(order, true, seed)?,
    })
}

fn placement_for(g: &Graph, at: &OrderPlacement) -> Result<Placement, Fail> {
    match (&at.order, &at.placement) {
        (Some(o), None) => place(&parse_order(o, g.n())?, at.mode, at.seed),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
            let pl = Placement::from_json_str(&text)?;
            if pl.n() != g.n() {
                return Err(Fail(format!("placement has {} points, graph has {} vertices", pl.n(), g.n())));
            }
            Ok(pl)
        }
        _ => Err(Fail("give exactly one of --order, --placement".into())),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Fail(format!("{}: {e}", path.display()))),
        None => {
            let mut so = io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<(), Fail> {
    emit(out, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn code(positive: bool) -> u8 {
    if positive {
        0
    } else {
        1
    }
}

fn construct(a: &ConstructArgs) -> Outcome {
    let given = has_graph(&a.graph);
    let need_graph = || read_graph(&a.graph);
    let mut doc = json!({});
    let (g, pl, order): (Graph, Placement, Option<CircularOrder>) = match a.class {
        Class::TwoTree => {
            let g = need_graph()?;
            if !is_two_tree(&g) {
                return Err(Fail("graph is not a 2-tree (use --class partial-two-tree)".into()));
            }
            let (pl, trace) = construct_two_tree(&two_tree_plan(&g)?)?;
            if let Some(path) = &a.trace {
                emit_json(&Some(path.clone()), &trace.to_json())?;
            }
            (g, pl, None)
        }
        Class::PartialTwoTree => {
            let g = need_graph()?;
            let out = construct_partial_two_tree(&g)?;
            if let Some(path) = &a.trace {
                emit_json(&Some(path.clone()), &out.trace.to_json())?;
            }
            doc["completed_graph6"] = json!(write_graph6(&out.completed));
            (g, out.restriction.placement, None)
        }
        Class::Grid => {
            let (k, l) = (a.k.ok_or(Fail("grid needs --k".into()))?, a.l.ok_or(Fail("grid needs --l".into()))?);
            let order = construct_grid_order(k, l)?;
            let g = if given { need_graph()? } else { named_graph(&NamedGraph::Grid(k, l))? };
            (g, place(&order, a.mode, a.seed)?, Some(order))
        }
        Class::Gnk => {
            let (n, k) = (a.n.ok_or(Fail("gnk needs --n".into()))?, a.k.ok_or(Fail("gnk needs --k".into()))?);
            let order = construct_kn_minus_ck_order(n, k)?;
            let g = named_graph(&NamedGraph::CompleteMinusCycle(n, k))?;
            let cnp = check_cnp(&g, &order, &kn_minus_ck_cover(n, k));
            doc["cnp_holds"] = json!(cnp.holds);
            (g, place(&order, a.mode, a.seed)?, Some(order))
        }
        Class::Cactus | Class::Outerpath | Class::CaterpillarComplement | Class::Cnp => {
            let g = need_graph()?;
            let order = match a.class {
                Class::Cactus => construct_cactus_order(&block_cut_tree(&g)?)?,
                Class::Outerpath => {
                    let ham = parse_order(a.order.as_deref().ok_or(Fail("outerpath needs --order".into()))?, g.n())?;
                    construct_outerpath_order(&validate_outerpath(&g, &ham)?)?
                }
                Class::CaterpillarComplement => construct_caterpillar_complement_order(&g.complement())?,
                _ => {
                    let cert = parse_order(a.order.as_deref().ok_or(Fail("cnp needs --order".into()))?, g.n())?;
                    construct_cnp_order(&g, &cert)?
                }
            };
            (g, place(&order, a.mode, a.seed)?, Some(order))
        }
    };
    let report = verify_oor(&g, &pl)?;
    doc["class"] = json!(a.class.to_possible_value().expect("named class").get_name());
    doc["graph6"] = json!(write_graph6(&g));
    if let Some(o) = &order {
        doc["order"] = json!(o.as_slice());
    }
    doc["placement"] = pl.to_json();
    doc["report"] = report.to_json();
    emit_json(&a.out, &doc)?;
    Ok(code(report.valid))
}

fn verify(a: &VerifyArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    let pl = placement_for(&g, &a.at)?;
    let report: VerificationReport = if a.gaps { verify_convex_gaps(&g, &pl)? } else { verify_oor(&g, &pl)? };
    let mut doc = report.to_json();
    if a.obstacle && report.valid {
        doc["obstacle"] = materialize_obstacle(&g, &pl, &report)?.to_json();
    }
    emit_json(&a.out, &doc)?;
    Ok(code(report.valid))
}

fn gap(a: &GapArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    let order = parse_order(&a.order, g.n())?;
    let result = gap_condition(&g, &order)?;
    let mut doc = result.to_json();
    if let Some(pair) = &a.nonedge {
        let xy = parse_list(pair)?;
        if xy.len() != 2 {
            return Err(Fail("--nonedge takes two vertices".into()));
        }
        let gaps = candidate_gaps(&g, &order, xy[0], xy[1])?;
        doc["candidate_gaps"] =
            json!(gaps.iter().map(|c| json!({"a": c.a, "b": c.b, "side": c.side.as_str()})).collect::<Vec<_>>());
    }
    emit_json(&a.out, &doc)?;
    Ok(code(result.holds))
}

fn search(a: &SearchArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    if let Some(path) = &a.dimacs {
        let text = write_dimacs(&encode_cnf(&g));
        emit(&(path.as_os_str() != "-").then(|| path.clone()), &text)?;
        return Ok(0);
    }
    if a.jobs == 0 {
        return Err(Fail("--jobs must be at least 1".into()));
    }
    if a.cnf {
        let start = std::time::Instant::now();
        let c = encode_cnf(&g);
        let mut doc = json!({"variables": c.num_vars(), "clauses": c.clauses.len()});
        let rc = match solve_cnf(&c, &a.budget.budget()) {
            SolveOutcome::Sat(model) => {
                let order = c.decode(&model).ok_or(Fail("model does not decode to an order".into()))?;
                doc["status"] = json!("found");
                doc["order"] = json!(order.as_slice());
                doc["gap_condition"] = gap_condition(&g, &order)?.to_json();
                0
            }
            SolveOutcome::Unsat => {
                doc["status"] = json!("exhausted");
                1
            }
            SolveOutcome::BudgetExceeded => {
                doc["status"] = json!("budget-exceeded");
                2
            }
        };
        doc["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        emit_json(&a.out, &doc)?;
        return Ok(rc);
    }
    let opts = SearchOptions { prune: !a.no_prune, budget: a.budget.budget(), jobs: a.jobs };
    let outcome = if a.regular { search_regular_order(&g, &opts) } else { search_gap_order(&g, &opts) };
    let mut doc = outcome.to_json();
    doc["check"] = json!(if a.regular { "regular" } else { "gap" });
    emit_json(&a.out, &doc)?;
    Ok(match outcome.status {
        SearchStatus::Found { .. } => 0,
        SearchStatus::Exhausted => 1,
        SearchStatus::BudgetExceeded => 2,
    })
}

fn catalog(a: &CatalogArgs) -> Outcome {
    if a.jobs == 0 {
        return Err(Fail("--jobs must be at least 1".into()));
    }
    let opts = CatalogOptions {
        check: a.check,
        skip_lines: a.skip,
        min_n: a.min_n,
        max_n: a.max_n,
        budget: a.budget.budget(),
        jobs: a.jobs,
    };
    let input: Box<dyn BufRead> = if a.input.as_os_str() == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        let f = fs::File::open(&a.input).map_err(|e| Fail(format!("{}: {e}", a.input.display())))?;
        Box::new(BufReader::new(f))
    };
    let mut sink: Box<dyn Write> = match &a.out {
        Some(path) => Box::new(fs::File::create(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut write_err = None;
    run_catalog(input, &opts, |rec| {
        if write_err.is_none() {
            if let Err(e) = writeln!(sink, "{}", rec.to_json()).and_then(|_| sink.flush()) {
                write_err = Some(e);
            }
        }
    })?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    Ok(0)
}

fn render(a: &RenderArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    let pl = placement_for(&g, &a.at)?;
    let report = if a.verify { Some(verify_oor(&g, &pl)?) } else { None };
    emit(&a.out, &render_svg(&g, &pl, report.as_ref()))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Gap(a) => gap(a),
        Command::Search(a) => search(a),
        Command::Catalog(a) => catalog(a),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(c) => ExitCode::from(c),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
