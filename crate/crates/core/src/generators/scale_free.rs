use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::rng::SimRng;

use super::{geometric_sizes, FamilyParams, GraphFamily, SEARCH_MAX_NODES, SEEDS_PER_SIZE};

/// Event probabilities and degree offsets of the directed growth model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleFreeParams {
    /// New node with an edge to an existing node (chosen by in-degree).
    pub alpha: f64,
    /// New edge between existing nodes (out-degree -> in-degree).
    pub beta: f64,
    /// New node with an edge from an existing node (chosen by out-degree).
    pub gamma: f64,
    pub delta_in: f64,
    pub delta_out: f64,
}

impl Default for ScaleFreeParams {
    fn default() -> Self {
        Self {
            alpha: 0.41,
            beta: 0.54,
            gamma: 0.05,
            delta_in: 0.2,
            delta_out: 0.0,
        }
    }
}

impl ScaleFreeParams {
    fn validate(&self) -> Result<()> {
        let Self { alpha, beta, gamma, delta_in, delta_out } = *self;
        if alpha < 0.0 || beta < 0.0 || gamma < 0.0 || delta_in < 0.0 || delta_out < 0.0 {
            return Err(Error::InvalidParams("scale-free parameters must be >= 0".into()));
        }
        if (alpha + beta + gamma - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "alpha + beta + gamma must be 1, got {}",
                alpha + beta + gamma
            )));
        }
        if alpha + gamma <= 0.0 {
            return Err(Error::InvalidParams("alpha + gamma must be > 0 for the graph to grow".into()));
        }
        Ok(())
    }
}

/// Directed scale-free growth from the 3-cycle `0 -> 1 -> 2 -> 0`, made
/// undirected at the end (directions dropped, self-loops removed, parallel
/// edges collapsed).
pub fn directed_scale_free<R: Rng + ?Sized>(n: usize, params: &ScaleFreeParams, rng: &mut R) -> Result<Graph> {
    params.validate()?;
    if n < 3 {
        return Err(Error::InvalidParams(format!("n must be >= 3, got {n}")));
    }
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    // edge heads / tails, one entry per edge: degree-proportional sampling
    let mut heads: Vec<usize> = vec![1, 2, 0];
    let mut tails: Vec<usize> = vec![0, 1, 2];
    let mut nodes = 3;

    let pick = |pool: &[usize], delta: f64, nodes: usize, rng: &mut R| -> usize {
        if delta > 0.0 {
            let bias = nodes as f64 * delta;
            if rng.random::<f64>() < bias / (bias + pool.len() as f64) {
                return rng.random_range(0..nodes);
            }
        }
        pool[rng.random_range(0..pool.len())]
    };

    while nodes < n {
        let r: f64 = rng.random();
        let (from, to) = if r < params.alpha {
            let w = pick(&heads, params.delta_in, nodes, rng);
            nodes += 1;
            (nodes - 1, w)
        } else if r < params.alpha + params.beta {
            let v = pick(&tails, params.delta_out, nodes, rng);
            let w = pick(&heads, params.delta_in, nodes, rng);
            (v, w)
        } else {
            let v = pick(&tails, params.delta_out, nodes, rng);
            nodes += 1;
            (v, nodes - 1)
        };
        edges.push((from, to));
        tails.push(from);
        heads.push(to);
    }
    build_graph(&edges, Some(n))
}

pub struct DirectedScaleFree;

impl DirectedScaleFree {
    fn params_from(p: &FamilyParams) -> ScaleFreeParams {
        let d = ScaleFreeParams::default();
        ScaleFreeParams {
            alpha: p.alpha.unwrap_or(d.alpha),
            beta: p.beta.unwrap_or(d.beta),
            gamma: p.gamma.unwrap_or(d.gamma),
            delta_in: p.delta_in.unwrap_or(d.delta_in),
            delta_out: p.delta_out.unwrap_or(d.delta_out),
        }
    }
}

impl GraphFamily for DirectedScaleFree {
    fn name(&self) -> &'static str {
        "scale-free"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["dsf", "directed-scale-free"]
    }

    fn generate(&self, params: &FamilyParams, rng: &mut SimRng) -> Result<Graph> {
        let n = FamilyParams::need(params.n, self.name(), "n")?;
        directed_scale_free(n, &Self::params_from(params), rng)
    }

    /// Each step adds one edge and a node with probability `alpha + gamma`, so
    /// the mean degree is about `2 / (alpha + gamma)`. The default
    /// `alpha : gamma` split is kept and `beta` absorbs the rest.
    fn search_schedule(&self, c_target: f64, _h_target: usize, _tol_c: f64) -> Result<Vec<FamilyParams>> {
        if c_target <= 2.0 {
            return Ok(Vec::new());
        }
        let d = ScaleFreeParams::default();
        let mut out = Vec::new();
        for n in geometric_sizes(8, 1.15, SEARCH_MAX_NODES) {
            for scale in [1.0, 1.15, 1.3] {
                let grow = (2.0 / (c_target * scale)).min(1.0);
                let alpha = grow * d.alpha / (d.alpha + d.gamma);
                let gamma = grow - alpha;
                for _ in 0..SEEDS_PER_SIZE.min(2) {
                    out.push(FamilyParams {
                        n: Some(n),
                        alpha: Some(alpha),
                        beta: Some(1.0 - alpha - gamma),
                        gamma: Some(gamma),
                        ..Default::default()
                    });
                }
            }
        }
        Ok(out)
    }
}
