//! Head-to-head trials between the prior-path searcher and the greedy searcher.
//!
//! Prior edge weights are all 1. The prior searcher pays `1 + xi` on each of
//! the `L` edges of its precomputed path; the greedy searcher pays `1 + xi` on
//! every edge it steps along, re-drawing `xi` for all incident edges at every
//! step and moving along a uniformly chosen minimum-weight edge.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Node};
use crate::uncertainty::UncertaintyModel;

/// Step cap per node used when the caller has no opinion.
pub const DEFAULT_STEPS_PER_NODE: usize = 10_000;

pub fn default_max_steps(g: &Graph) -> usize {
    DEFAULT_STEPS_PER_NODE.saturating_mul(g.node_count())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub source: Node,
    pub target: Node,
    /// Shortest-path edge count.
    pub path_length: usize,
    pub w_d: f64,
    pub w_g: f64,
    pub steps: usize,
    pub ratio: f64,
    /// The greedy walk hit its step cap before reaching the target.
    pub censored: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyWalk {
    pub weight: f64,
    pub steps: usize,
    pub censored: bool,
}

/// Realized weight of a precomputed path of `path_length` unit edges.
///
/// Only the length enters, so the result does not depend on which shortest
/// path was enumerated.
pub fn dijkstra_path_weight<R: Rng + ?Sized>(
    path_length: usize,
    model: &UncertaintyModel,
    rng: &mut R,
) -> f64 {
    (0..path_length).map(|_| 1.0 + model.sample_xi(rng)).sum()
}

/// Greedy walk from `s` until `t` is reached or `max_steps` edges have been
/// traversed.
pub fn greedy_walk<R: Rng + ?Sized>(
    g: &Graph,
    s: Node,
    t: Node,
    model: &UncertaintyModel,
    rng: &mut R,
    max_steps: usize,
) -> Result<GreedyWalk> {
    g.check_node(s)?;
    g.check_node(t)?;
    if max_steps == 0 {
        return Err(Error::InvalidParams("max_steps must be >= 1".into()));
    }
    if g.bfs_distances(s)[t].is_none() {
        return Err(Error::Disconnected(format!("{t} unreachable from {s}")));
    }
    Ok(walk_unchecked(g, s, t, model, rng, max_steps))
}

fn walk_unchecked<R: Rng + ?Sized>(
    g: &Graph,
    s: Node,
    t: Node,
    model: &UncertaintyModel,
    rng: &mut R,
    max_steps: usize,
) -> GreedyWalk {
    let mut current = s;
    let mut weight = 0.0;
    let mut steps = 0;
    let mut ties: Vec<Node> = Vec::new();
    while current != t {
        if steps == max_steps {
            return GreedyWalk {
                weight,
                steps,
                censored: true,
            };
        }
        let mut best = f64::INFINITY;
        ties.clear();
        for &w in g.neighbors(current) {
            let xi = model.sample_xi(rng);
            if xi < best {
                best = xi;
                ties.clear();
                ties.push(w);
            } else if xi == best {
                ties.push(w);
            }
        }
        let next = if ties.len() == 1 {
            ties[0]
        } else {
            ties[rng.random_range(0..ties.len())]
        };
        weight += 1.0 + best;
        steps += 1;
        current = next;
    }
    GreedyWalk {
        weight,
        steps,
        censored: false,
    }
}

/// One trial: uniform source, uniform distinct target, both searchers.
pub fn simulation_run<R: Rng + ?Sized>(
    g: &Graph,
    model: &UncertaintyModel,
    rng: &mut R,
    max_steps: usize,
) -> Result<RunOutcome> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidParams("need at least 2 nodes".into()));
    }
    let source = rng.random_range(0..n);
    let target = loop {
        let t = rng.random_range(0..n);
        if t != source {
            break t;
        }
    };
    run_between(g, source, target, model, rng, max_steps)
}

/// A trial with fixed endpoints.
pub fn run_between<R: Rng + ?Sized>(
    g: &Graph,
    source: Node,
    target: Node,
    model: &UncertaintyModel,
    rng: &mut R,
    max_steps: usize,
) -> Result<RunOutcome> {
    if source == target {
        return Err(Error::InvalidParams("source and target must differ".into()));
    }
    let path = g.bfs_path(source, target)?;
    let w_d = dijkstra_path_weight(path.length, model, rng);
    let walk = walk_unchecked(g, source, target, model, rng, max_steps.max(1));
    Ok(RunOutcome {
        source,
        target,
        path_length: path.length,
        w_d,
        w_g: walk.weight,
        steps: walk.steps,
        ratio: walk.weight / w_d,
        censored: walk.censored,
    })
}
