//! Averaged weight ratios over parameter grids.
//!
//! * [`sweep_up`]: one fixed graph, a grid of `(u, p)`.
//! * [`sweep_ch`]: fixed `(u, p)`, a grid of `(c, H)` with a freshly generated
//!   graph for every run (or one per cell when `fix_graph_per_cell` is set).
//!
//! Every run draws from its own stream derived from the master seed and the
//! run's grid coordinates, and per-cell results are reduced in run order, so
//! grids are bit-identical for any worker count. In the `(u, p)` plane the
//! stream does not depend on the `u` index: all `u` rows see the same source,
//! target and coin flips, which makes rows directly comparable and leaves
//! `p = 0` cells identical across `u`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{find_graph_with, GraphFamily};
use crate::graph::Graph;
use crate::rng::stream_rng;
use crate::searchers::{default_max_steps, simulation_run, RunOutcome};
use crate::theory::Plane;
use crate::uncertainty::UncertaintyModel;

/// Fraction of censored runs above which a cell is flagged unreliable.
pub const UNRELIABLE_CENSOR_FRACTION: f64 = 0.01;

const STREAM_UP: u64 = 0x5550;
const STREAM_CH: u64 = 0x4348;
const STREAM_BATCH: u64 = 0x5349;
const STREAM_GEN: u64 = 0;
const STREAM_SIM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    /// Mean of per-run `w_g / w_d` over uncensored runs.
    pub mean_ratio: f64,
    /// Standard error of `mean_ratio`.
    pub std_err: f64,
    pub mean_wd: f64,
    pub mean_wg: f64,
    /// `mean_wg / mean_wd`.
    pub ratio_of_means: f64,
    /// All runs, censored included.
    pub runs: usize,
    pub censored: usize,
    pub unreliable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub x: f64,
    pub y: f64,
    pub stats: Option<CellStats>,
    /// Why `stats` is missing.
    pub absent: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Option<String>,
    pub u: Option<f64>,
    pub p: Option<f64>,
    pub node_count: Option<usize>,
    pub edge_count: Option<usize>,
    pub mean_degree: Option<f64>,
    pub half_diameter: Option<usize>,
    pub max_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub plane: Plane,
    pub x_axis: Vec<f64>,
    pub y_axis: Vec<f64>,
    /// Row-major by `x`: cell `(ix, iy)` is at `ix * y_axis.len() + iy`.
    pub cells: Vec<GridCell>,
    pub master_seed: u64,
    pub runs: usize,
    pub provenance: Provenance,
}

impl SweepGrid {
    pub fn cell(&self, ix: usize, iy: usize) -> &GridCell {
        &self.cells[ix * self.y_axis.len() + iy]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub runs: usize,
    pub master_seed: u64,
    /// Defaults to `10^4` steps per node of the graph walked.
    pub max_steps: Option<usize>,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl SweepOptions {
    pub fn new(runs: usize, master_seed: u64) -> Self {
        Self {
            runs,
            master_seed,
            max_steps: None,
            workers: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidParams("runs must be >= 1".into()));
        }
        Ok(())
    }

    fn steps_for(&self, g: &Graph) -> usize {
        self.max_steps.unwrap_or_else(|| default_max_steps(g))
    }
}

/// Cell statistics from a batch of trials.
pub fn average_ratio(outcomes: &[RunOutcome]) -> Result<CellStats> {
    let kept: Vec<&RunOutcome> = outcomes.iter().filter(|o| !o.censored).collect();
    if kept.is_empty() {
        return Err(Error::AllCensored(outcomes.len()));
    }
    let n = kept.len() as f64;
    let mean_ratio = kept.iter().map(|o| o.ratio).sum::<f64>() / n;
    let var = if kept.len() > 1 {
        kept.iter().map(|o| (o.ratio - mean_ratio).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let mean_wd = kept.iter().map(|o| o.w_d).sum::<f64>() / n;
    let mean_wg = kept.iter().map(|o| o.w_g).sum::<f64>() / n;
    let censored = outcomes.len() - kept.len();
    Ok(CellStats {
        mean_ratio,
        std_err: (var / n).sqrt(),
        mean_wd,
        mean_wg,
        ratio_of_means: mean_wg / mean_wd,
        runs: outcomes.len(),
        censored,
        unreliable: censored as f64 > UNRELIABLE_CENSOR_FRACTION * outcomes.len() as f64,
    })
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn finish_cell(x: f64, y: f64, outcomes: Result<Vec<RunOutcome>>) -> Result<GridCell> {
    let stats = outcomes.and_then(|o| average_ratio(&o));
    Ok(match stats {
        Ok(s) => GridCell { x, y, stats: Some(s), absent: None },
        Err(e @ Error::AllCensored(_)) | Err(e @ Error::NotFound { .. }) | Err(e @ Error::GenerationFailed(_)) => {
            GridCell { x, y, stats: None, absent: Some(e.to_string()) }
        }
        Err(e) => return Err(e),
    })
}

/// Averaged ratios over `(u, p)` on one graph.
pub fn sweep_up(
    g: &Graph,
    u_values: &[f64],
    p_values: &[f64],
    opts: &SweepOptions,
) -> Result<SweepGrid> {
    opts.validate()?;
    if g.node_count() < 2 {
        return Err(Error::InvalidParams("need at least 2 nodes".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected("sweep graph must be connected".into()));
    }
    let models = u_values
        .iter()
        .flat_map(|&u| p_values.iter().map(move |&p| UncertaintyModel::new(u, p)))
        .collect::<Result<Vec<_>>>()?;
    let max_steps = opts.steps_for(g);
    let ny = p_values.len();

    let cells = with_pool(opts.workers, || {
        models
            .par_iter()
            .enumerate()
            .map(|(idx, model)| {
                let iy = idx % ny;
                let outcomes = (0..opts.runs)
                    .into_par_iter()
                    .map(|run| {
                        let mut rng = stream_rng(opts.master_seed, &[STREAM_UP, iy as u64, run as u64]);
                        simulation_run(g, model, &mut rng, max_steps)
                    })
                    .collect::<Result<Vec<_>>>();
                finish_cell(model.u(), model.p(), outcomes)
            })
            .collect::<Result<Vec<_>>>()
    })??;

    let stats = g.degree_stats();
    Ok(SweepGrid {
        plane: Plane::UP,
        x_axis: u_values.to_vec(),
        y_axis: p_values.to_vec(),
        cells,
        master_seed: opts.master_seed,
        runs: opts.runs,
        provenance: Provenance {
            family: None,
            u: None,
            p: None,
            node_count: Some(g.node_count()),
            edge_count: Some(g.edge_count()),
            mean_degree: Some(stats.mean),
            half_diameter: g.half_diameter().ok(),
            max_steps: Some(max_steps),
        },
    })
}

/// `opts.runs` trials on one graph, averaged.
pub fn simulate(g: &Graph, model: &UncertaintyModel, opts: &SweepOptions) -> Result<CellStats> {
    opts.validate()?;
    if g.node_count() < 2 {
        return Err(Error::InvalidParams("need at least 2 nodes".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected("simulation graph must be connected".into()));
    }
    let max_steps = opts.steps_for(g);
    let outcomes = with_pool(opts.workers, || {
        (0..opts.runs)
            .into_par_iter()
            .map(|run| {
                let mut rng = stream_rng(opts.master_seed, &[STREAM_BATCH, run as u64]);
                simulation_run(g, model, &mut rng, max_steps)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    average_ratio(&outcomes)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChOptions {
    /// Allowed gap between the generated mean degree and the cell's `c`.
    pub tol_c: f64,
    /// Attempts per `find_graph_with` call.
    pub gen_budget: usize,
    /// Generate one graph per cell instead of one per run.
    pub fix_graph_per_cell: bool,
}

impl Default for ChOptions {
    fn default() -> Self {
        Self {
            tol_c: 0.5,
            gen_budget: 200,
            fix_graph_per_cell: false,
        }
    }
}

/// Averaged ratios over `(c, H)` at fixed `(u, p)`.
#[allow(clippy::too_many_arguments)]
pub fn sweep_ch(
    family: &dyn GraphFamily,
    u: f64,
    p: f64,
    c_values: &[usize],
    h_values: &[usize],
    opts: &SweepOptions,
    ch: &ChOptions,
) -> Result<SweepGrid> {
    opts.validate()?;
    let model = UncertaintyModel::new(u, p)?;
    let ny = h_values.len();
    let coords: Vec<(usize, usize)> = (0..c_values.len())
        .flat_map(|ix| (0..ny).map(move |iy| (ix, iy)))
        .collect();
    let one_graph = ch.fix_graph_per_cell || family.deterministic();

    let cells = with_pool(opts.workers, || {
        coords
            .par_iter()
            .map(|&(ix, iy)| {
                let (c, h) = (c_values[ix], h_values[iy]);
                let base = [STREAM_CH, ix as u64, iy as u64];
                let find = |path: &[u64]| {
                    let mut rng = stream_rng(opts.master_seed, path);
                    find_graph_with(family, c as f64, h, ch.tol_c, ch.gen_budget, &mut rng)
                };
                let shared = if one_graph {
                    match find(&[base[0], base[1], base[2], u64::MAX, STREAM_GEN]) {
                        Ok(g) => Some(g),
                        Err(e) => return finish_cell(c as f64, h as f64, Err(e)),
                    }
                } else {
                    None
                };
                let outcomes = (0..opts.runs)
                    .into_par_iter()
                    .map(|run| {
                        let path = [base[0], base[1], base[2], run as u64];
                        let owned;
                        let g = match &shared {
                            Some(g) => g,
                            None => {
                                owned = find(&[path[0], path[1], path[2], path[3], STREAM_GEN])?;
                                &owned
                            }
                        };
                        let mut rng = stream_rng(
                            opts.master_seed,
                            &[path[0], path[1], path[2], path[3], STREAM_SIM],
                        );
                        simulation_run(g, &model, &mut rng, opts.steps_for(g))
                    })
                    .collect::<Result<Vec<_>>>();
                finish_cell(c as f64, h as f64, outcomes)
            })
            .collect::<Result<Vec<_>>>()
    })??;

    Ok(SweepGrid {
        plane: Plane::CH,
        x_axis: c_values.iter().map(|&c| c as f64).collect(),
        y_axis: h_values.iter().map(|&h| h as f64).collect(),
        cells,
        master_seed: opts.master_seed,
        runs: opts.runs,
        provenance: Provenance {
            family: Some(family.name().to_string()),
            u: Some(u),
            p: Some(p),
            node_count: None,
            edge_count: None,
            mean_degree: None,
            half_diameter: None,
            max_steps: opts.max_steps,
        },
    })
}

/// `10^d` for each decade `d`.
pub fn decades(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|d| 10f64.powi(d)).collect()
}
