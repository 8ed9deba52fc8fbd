//! Command-line driver: graph generation, simulation, sweeps, theory and MFPT.
//!
//! Exit codes: 0 success, 2 invalid parameters, 3 I/O or parse failure,
//! 4 computation failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gsu::generators::{c_ary_tree, FamilyParams, GeneratorSpec, Registry};
use gsu::graph::{Graph, Node};
use gsu::io::{
    format_edge_list, grid_csv, json_report, parse_axis, parse_int_axis, read_edge_list, write_text,
};
use gsu::mfpt::{cary_backbone_node, CaryQuery, MfptQuery, OracleRegistry};
use gsu::rng::seeded;
use gsu::sweep::{simulate, sweep_ch, sweep_up, ChOptions, SweepOptions};
use gsu::theory::{
    critical_curve, critical_u, optimal_p, z_star, CurveSpec, TheoryPoint, DEFAULT_CONTOUR_TOL,
};
use gsu::{DegreeStats, Error, Result, UncertaintyModel};

#[derive(Parser)]
#[command(name = "gsu", version, about = "Prior versus greedy search under edge-weight uncertainty")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Average the greedy/prior weight ratio on one graph.
    Simulate(SimulateArgs),
    /// Average ratios over a (u, p) or (c, H) grid.
    Sweep(SweepArgs),
    /// Closed-form ratio estimate, optimal p, critical u and critical curves.
    Theory(TheoryArgs),
    /// Mean first passage times from several oracles.
    Mfpt(MfptArgs),
}

#[derive(Args)]
struct WorkerArgs {
    /// Worker threads (0: all cores).
    #[arg(long, env = "GSU_WORKERS", default_value_t = 0)]
    workers: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long = "H")]
    h: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    delta_in: Option<f64>,
    #[arg(long)]
    delta_out: Option<f64>,
    /// Lattice side lengths, e.g. `3,3`.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    periodic: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output.
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the stats report here (it always goes to stdout).
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
    /// Fail on a disconnected graph instead of keeping its largest component.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    u: f64,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1000)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Greedy walk step cap (default: 10^4 per node).
    #[arg(long)]
    max_steps: Option<usize>,
    #[command(flatten)]
    workers: WorkerArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    Up,
    Ch,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    plane: PlaneArg,
    /// Edge list for the (u, p) plane.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    strict: bool,
    /// `u` axis for the (u, p) plane, or the fixed `u` for (c, H).
    #[arg(long)]
    u: String,
    /// `p` axis for the (u, p) plane, or the fixed `p` for (c, H).
    #[arg(long)]
    p: String,
    /// Generator family for the (c, H) plane.
    #[arg(long)]
    family: Option<String>,
    /// Mean-degree axis for the (c, H) plane, e.g. `2:8`.
    #[arg(long)]
    c: Option<String>,
    /// Half-diameter axis for the (c, H) plane.
    #[arg(long = "H")]
    h: Option<String>,
    #[arg(long, default_value_t = 1000)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Candidate graphs tried per (c, H) target.
    #[arg(long, default_value_t = 200)]
    budget: usize,
    /// Accepted mean-degree deviation for (c, H) targets.
    #[arg(long, default_value_t = 0.5)]
    tol_c: f64,
    /// One graph per (c, H) cell instead of one per run.
    #[arg(long)]
    fix_graph: bool,
    /// CSV output (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the full grid as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    workers: WorkerArgs,
}

#[derive(Args)]
struct TheoryArgs {
    #[arg(long)]
    u: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long = "H")]
    h: Option<f64>,
    /// Report only the critical u for `--H`.
    #[arg(long)]
    critical_u: bool,
    /// Trace the level set z~ = 1.
    #[arg(long, conflicts_with = "critical_u")]
    critical_curve: bool,
    /// Plane of the critical curve: `up` fixes c and H, `ch` fixes u and p.
    #[arg(long, value_enum, default_value = "up")]
    plane: PlaneArg,
    /// Column grid (u for `up`, H for `ch`).
    #[arg(long)]
    x_grid: Option<String>,
    /// Root-search grid (p for `up`, c for `ch`).
    #[arg(long)]
    y_grid: Option<String>,
    #[arg(long, default_value_t = DEFAULT_CONTOUR_TOL)]
    tol: f64,
}

#[derive(Args)]
struct MfptArgs {
    /// Use the complete c-ary tree of height H, from the root to depth L.
    #[arg(long)]
    cary: bool,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long = "H")]
    h: Option<usize>,
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Source id as written in the edge list.
    #[arg(long)]
    s: Option<u64>,
    /// Target id as written in the edge list.
    #[arg(long)]
    t: Option<u64>,
    /// Comma-separated oracle names.
    #[arg(long, value_delimiter = ',', default_value = "solve")]
    oracle: Vec<String>,
    /// Monte Carlo walks.
    #[arg(long, default_value_t = 10_000)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Theory(a) => cmd_theory(a),
        Command::Mfpt(a) => cmd_mfpt(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit<T: Serialize>(body: &T) -> Result<()> {
    print!("{}", json_report(body)?);
    Ok(())
}

fn missing(flag: &str, context: &str) -> Error {
    Error::InvalidParams(format!("{flag} is required {context}"))
}

#[derive(Serialize)]
struct GraphReport {
    family: String,
    seed: u64,
    n: usize,
    edges: usize,
    degree_stats: DegreeStats,
    connected: bool,
    diameter: Option<usize>,
    #[serde(rename = "H")]
    h: Option<usize>,
}

fn cmd_generate(a: GenerateArgs) -> Result<()> {
    let spec = GeneratorSpec {
        family: a.family,
        params: FamilyParams {
            n: a.n,
            c: a.c,
            h: a.h,
            k: a.k,
            m: a.m,
            q: a.q,
            beta: a.beta,
            alpha: a.alpha,
            gamma: a.gamma,
            delta_in: a.delta_in,
            delta_out: a.delta_out,
            dims: a.dims,
            periodic: a.periodic,
        },
        seed: a.seed,
    };
    let registry = Registry::default();
    let g = spec.generate(&registry)?;
    write_text(&a.output, &format_edge_list(&g))?;
    let diameter = g.diameter().ok();
    let report = GraphReport {
        family: registry.get(&spec.family)?.name().to_string(),
        seed: a.seed,
        n: g.node_count(),
        edges: g.edge_count(),
        degree_stats: g.degree_stats(),
        connected: g.is_connected(),
        diameter,
        h: diameter.map(|d| d.div_ceil(2)),
    };
    if let Some(path) = &a.stats {
        write_text(path, &json_report(&report)?)?;
    }
    emit(&report)
}

/// A graph read from disk, reduced to its largest component unless strict.
struct LoadedGraph {
    graph: Graph,
    /// Original id of each node of `graph`.
    ids: Vec<u64>,
    reduced: bool,
}

fn load_graph(path: &Path, strict: bool) -> Result<LoadedGraph> {
    let el = read_edge_list(path)?;
    if el.graph.is_connected() {
        return Ok(LoadedGraph {
            graph: el.graph,
            ids: el.ids,
            reduced: false,
        });
    }
    if strict {
        return Err(Error::Disconnected(format!("{} (strict mode)", path.display())));
    }
    let (graph, map) = el.graph.largest_component();
    let mut ids = vec![0; graph.node_count()];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            ids[*new] = el.ids[old];
        }
    }
    eprintln!(
        "warning: graph is disconnected; using its largest component ({} of {} nodes)",
        graph.node_count(),
        el.graph.node_count()
    );
    Ok(LoadedGraph { graph, ids, reduced: true })
}

fn compaction(ids: &[u64]) -> Option<Vec<u64>> {
    let identity = ids.iter().enumerate().all(|(i, &id)| id == i as u64);
    (!identity).then(|| ids.to_vec())
}

#[derive(Serialize)]
struct SimulateReport {
    mean_ratio: f64,
    std_err: f64,
    ratio_of_means: f64,
    mean_wd: f64,
    mean_wg: f64,
    runs: usize,
    censored: usize,
    unreliable: bool,
    seed: u64,
    u: f64,
    p: f64,
    n: usize,
    edges: usize,
    max_steps: usize,
    largest_component_only: bool,
    /// Original id of each node, when ids were not already `0..n`.
    node_ids: Option<Vec<u64>>,
}

fn cmd_simulate(a: SimulateArgs) -> Result<()> {
    let model = UncertaintyModel::new(a.u, a.p)?;
    let loaded = load_graph(&a.input.graph, a.input.strict)?;
    let g = &loaded.graph;
    let opts = SweepOptions {
        runs: a.runs,
        master_seed: a.seed,
        max_steps: a.max_steps,
        workers: a.workers.workers,
    };
    let s = simulate(g, &model, &opts)?;
    emit(&SimulateReport {
        mean_ratio: s.mean_ratio,
        std_err: s.std_err,
        ratio_of_means: s.ratio_of_means,
        mean_wd: s.mean_wd,
        mean_wg: s.mean_wg,
        runs: s.runs,
        censored: s.censored,
        unreliable: s.unreliable,
        seed: a.seed,
        u: a.u,
        p: a.p,
        n: g.node_count(),
        edges: g.edge_count(),
        max_steps: a.max_steps.unwrap_or_else(|| gsu::searchers::default_max_steps(g)),
        largest_component_only: loaded.reduced,
        node_ids: compaction(&loaded.ids),
    })
}

fn single(spec: &str, flag: &str) -> Result<f64> {
    match parse_axis(spec)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(Error::InvalidParams(format!("{flag} takes a single value on this plane"))),
    }
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let opts = SweepOptions {
        runs: a.runs,
        master_seed: a.seed,
        max_steps: a.max_steps,
        workers: a.workers.workers,
    };
    let grid = match a.plane {
        PlaneArg::Up => {
            let path = a.graph.as_ref().ok_or_else(|| missing("--graph", "for --plane up"))?;
            let u = parse_axis(&a.u)?;
            let p = parse_axis(&a.p)?;
            let loaded = load_graph(path, a.strict)?;
            sweep_up(&loaded.graph, &u, &p, &opts)?
        }
        PlaneArg::Ch => {
            let registry = Registry::default();
            let family = registry.get(a.family.as_deref().ok_or_else(|| missing("--family", "for --plane ch"))?)?;
            let c = parse_int_axis(a.c.as_deref().ok_or_else(|| missing("--c", "for --plane ch"))?)?;
            let h = parse_int_axis(a.h.as_deref().ok_or_else(|| missing("--H", "for --plane ch"))?)?;
            let ch = ChOptions {
                tol_c: a.tol_c,
                gen_budget: a.budget,
                fix_graph_per_cell: a.fix_graph,
            };
            sweep_ch(family, single(&a.u, "--u")?, single(&a.p, "--p")?, &c, &h, &opts, &ch)?
        }
    };
    let csv = grid_csv(&grid);
    match &a.output {
        Some(path) => write_text(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &a.json {
        write_text(path, &json_report(&grid)?)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TheoryReport {
    #[serde(flatten)]
    point: TheoryPoint,
    mfpt_tree_scale: f64,
    p_star: Option<f64>,
    z_star: Option<f64>,
    /// Why `p_star` is absent.
    p_star_reason: Option<String>,
    critical_u: f64,
}

#[derive(Serialize)]
struct CriticalUReport {
    #[serde(rename = "H")]
    h: f64,
    critical_u: f64,
}

fn default_axis(spec: Option<&str>, default: Vec<f64>) -> Result<Vec<f64>> {
    spec.map_or(Ok(default), parse_axis)
}

fn cmd_theory(a: TheoryArgs) -> Result<()> {
    if a.critical_u {
        let h = a.h.ok_or_else(|| missing("--H", "with --critical-u"))?;
        if !(h > 0.0) {
            return Err(Error::InvalidParams(format!("H must be positive, got {h}")));
        }
        return emit(&CriticalUReport { h, critical_u: critical_u(h) });
    }
    if a.critical_curve {
        let (fixed, x_default, y_default) = match a.plane {
            PlaneArg::Up => {
                let c = a.c.ok_or_else(|| missing("--c", "for an (u, p) curve"))?;
                let h = a.h.ok_or_else(|| missing("--H", "for an (u, p) curve"))?;
                let u: Vec<f64> = (0..=32).map(|i| 10f64.powf(1.0 + i as f64 * 0.25)).collect();
                let p: Vec<f64> = (1..1000).map(|i| i as f64 * 1e-3).collect();
                (CurveSpec::Up { c, h }, u, p)
            }
            PlaneArg::Ch => {
                let u = a.u.ok_or_else(|| missing("--u", "for a (c, H) curve"))?;
                let p = a.p.ok_or_else(|| missing("--p", "for a (c, H) curve"))?;
                let h: Vec<f64> = (1..=10).map(f64::from).collect();
                let c: Vec<f64> = (0..=620).map(|i| 2.0 + i as f64 * 0.1).collect();
                (CurveSpec::Ch { u, p }, h, c)
            }
        };
        let x = default_axis(a.x_grid.as_deref(), x_default)?;
        let y = default_axis(a.y_grid.as_deref(), y_default)?;
        return emit(&critical_curve(fixed, &x, &y, a.tol)?);
    }
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| missing(flag, "for a theory point"));
    let (u, p, c, h) = (need(a.u, "--u")?, need(a.p, "--p")?, need(a.c, "--c")?, need(a.h, "--H")?);
    let point = TheoryPoint::evaluate(u, p, c, h)?;
    let (p_star, z_star, reason) = match optimal_p(u, c) {
        Ok(ps) => (Some(ps), z_star(u, c, h).ok(), None),
        Err(e @ Error::NoInteriorOptimum(_)) => (None, None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    emit(&TheoryReport {
        point,
        mfpt_tree_scale: 2.0 * c.powf(h),
        p_star,
        z_star,
        p_star_reason: reason,
        critical_u: critical_u(h),
    })
}

#[derive(Serialize)]
struct OracleValue {
    oracle: String,
    value: f64,
    std_err: Option<f64>,
}

#[derive(Serialize)]
struct PairError {
    a: String,
    b: String,
    rel_err: f64,
}

#[derive(Serialize)]
struct MfptReport {
    source: u64,
    target: u64,
    n: usize,
    values: Vec<OracleValue>,
    pairwise: Vec<PairError>,
}

fn cmd_mfpt(a: MfptArgs) -> Result<()> {
    let (graph, source, target, cary, ids) = if a.cary {
        let c = a.c.ok_or_else(|| missing("--c", "with --cary"))?;
        let h = a.h.ok_or_else(|| missing("--H", "with --cary"))?;
        let l = a.l.ok_or_else(|| missing("--L", "with --cary"))?;
        if c < 2 || l == 0 || l > h {
            return Err(Error::InvalidParams(format!("need c >= 2 and 1 <= L <= H, got c={c}, H={h}, L={l}")));
        }
        let g = c_ary_tree(c, h)?;
        let ids = (0..g.node_count() as u64).collect();
        (g, 0, cary_backbone_node(c, l), Some(CaryQuery { c, h, l }), ids)
    } else {
        let path = a.graph.as_ref().ok_or_else(|| missing("--graph", "without --cary"))?;
        let el = read_edge_list(path)?;
        let find = |id: Option<u64>, flag: &str| -> Result<Node> {
            let id = id.ok_or_else(|| missing(flag, "with --graph"))?;
            el.ids
                .binary_search(&id)
                .map_err(|_| Error::InvalidParams(format!("{flag} {id} is not in the edge list")))
        };
        let (s, t) = (find(a.s, "--s")?, find(a.t, "--t")?);
        (el.graph.clone(), s, t, None, el.ids.clone())
    };
    let query = MfptQuery {
        graph: &graph,
        source,
        target,
        cary,
        runs: a.runs,
    };
    let registry = OracleRegistry::default();
    let mut rng = seeded(a.seed);
    let mut values = Vec::new();
    for name in &a.oracle {
        let oracle = registry.get(name.trim())?;
        let est = oracle.estimate(&query, &mut rng)?;
        values.push(OracleValue {
            oracle: oracle.name().to_string(),
            value: est.value,
            std_err: est.std_err,
        });
    }
    let mut pairwise = Vec::new();
    for (i, x) in values.iter().enumerate() {
        for y in &values[i + 1..] {
            let scale = x.value.abs().max(y.value.abs());
            let rel_err = if scale == 0.0 { 0.0 } else { (x.value - y.value).abs() / scale };
            pairwise.push(PairError {
                a: x.oracle.clone(),
                b: y.oracle.clone(),
                rel_err,
            });
        }
    }
    emit(&MfptReport {
        source: ids[source],
        target: ids[target],
        n: graph.node_count(),
        values,
        pairwise,
    })
}
