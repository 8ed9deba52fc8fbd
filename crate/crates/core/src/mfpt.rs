//! Mean first passage time (MFPT) of the simple random walk.
//!
//! Three independent routes, selectable by name through [`OracleRegistry`]:
//!
//! * `solve`: the absorbing-chain system `m_i = 1 + sum_{l != t} m_l / k_i`
//!   solved densely by Gaussian elimination,
//! * `cluster`: on trees, the backbone cluster sum
//!   `m(v_0 -> v_L) = sum_{I=1..L} sum_{K<I} W_K` where `W_K` is the total
//!   degree of the part of the tree hanging off backbone node `v_K`,
//! * `mc`: plain Monte Carlo of the walk,
//!
//! plus `formula`, the closed form for complete `c`-ary trees.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Node};
use crate::rng::SimRng;
use crate::theory::mfpt_cary_exact;

/// Node-count cap for the dense solve.
pub const DENSE_SOLVE_LIMIT: usize = 4000;

const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MfptVector {
    pub target: Node,
    /// MFPT from every node to `target`; zero at the target.
    pub values: Vec<f64>,
}

impl MfptVector {
    /// Largest relative violation of the first-step recurrence.
    pub fn max_residual(&self, g: &Graph) -> f64 {
        (0..g.node_count())
            .filter(|&i| i != self.target)
            .map(|i| {
                let k = g.degree(i) as f64;
                let next: f64 = g.neighbors(i).iter().map(|&l| self.values[l]).sum::<f64>() / k;
                (self.values[i] - 1.0 - next).abs() / self.values[i].abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

pub fn mfpt_linear_solve(g: &Graph, t: Node) -> Result<MfptVector> {
    mfpt_linear_solve_with_limit(g, t, DENSE_SOLVE_LIMIT)
}

pub fn mfpt_linear_solve_with_limit(g: &Graph, t: Node, limit: usize) -> Result<MfptVector> {
    g.check_node(t)?;
    let n = g.node_count();
    if n > limit {
        return Err(Error::TooLarge(format!("dense MFPT solve on {n} nodes (limit {limit})")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected("MFPT needs a connected graph".into()));
    }
    // unknowns: every node except t, in order
    let index = |v: Node| if v < t { v } else { v - 1 };
    let dim = n - 1;
    let mut a = vec![0.0f64; dim * dim];
    let mut b = vec![1.0f64; dim];
    for v in (0..n).filter(|&v| v != t) {
        let row = index(v);
        a[row * dim + row] = 1.0;
        let p = 1.0 / g.degree(v) as f64;
        for &w in g.neighbors(v) {
            if w != t {
                a[row * dim + index(w)] -= p;
            }
        }
    }
    gaussian_solve(&mut a, &mut b, dim)?;

    let mut values = vec![0.0; n];
    for v in (0..n).filter(|&v| v != t) {
        values[v] = b[index(v)];
    }
    let out = MfptVector { target: t, values };
    let residual = out.max_residual(g);
    if !(residual < RESIDUAL_TOL) {
        return Err(Error::Numerical(format!("MFPT residual {residual:e} exceeds {RESIDUAL_TOL:e}")));
    }
    Ok(out)
}

/// In-place Gaussian elimination with partial pivoting; the solution is left
/// in `b`.
fn gaussian_solve(a: &mut [f64], b: &mut [f64], dim: usize) -> Result<()> {
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&i, &j| a[i * dim + col].abs().total_cmp(&a[j * dim + col].abs()))
            .unwrap();
        if a[pivot * dim + col].abs() < 1e-300 {
            return Err(Error::Numerical("singular MFPT system".into()));
        }
        if pivot != col {
            for k in 0..dim {
                a.swap(col * dim + k, pivot * dim + k);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * dim + col];
        let (upper, lower) = a.split_at_mut((col + 1) * dim);
        let pivot_row = &upper[col * dim..];
        for (r, row) in lower.chunks_exact_mut(dim).enumerate() {
            let factor = row[col] / diag;
            if factor == 0.0 {
                continue;
            }
            for k in col..dim {
                row[k] -= factor * pivot_row[k];
            }
            b[col + 1 + r] -= factor * b[col];
        }
    }
    for col in (0..dim).rev() {
        let mut acc = b[col];
        for k in col + 1..dim {
            acc -= a[col * dim + k] * b[k];
        }
        b[col] = acc / a[col * dim + col];
    }
    Ok(())
}

/// Degree sums `W_0 .. W_{L-1}` of the clusters hanging off the backbone
/// `s = v_0, ..., v_L = t`. Cluster `K` is the component of `v_K` once all
/// backbone edges are removed; degrees are taken in the full tree.
pub fn cluster_weights(g: &Graph, s: Node, t: Node) -> Result<Vec<u64>> {
    g.check_node(s)?;
    g.check_node(t)?;
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let backbone = g.bfs_path(s, t)?.nodes;
    let mut on_backbone = vec![false; g.node_count()];
    for &v in &backbone {
        on_backbone[v] = true;
    }
    let mut seen = on_backbone.clone();
    let mut queue = VecDeque::new();
    let weights = backbone[..backbone.len() - 1]
        .iter()
        .map(|&root| {
            let mut total = g.degree(root) as u64;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        total += g.degree(w) as u64;
                        queue.push_back(w);
                    }
                }
            }
            total
        })
        .collect();
    Ok(weights)
}

/// Exact tree MFPT from the backbone cluster sum; `W_K` contributes once for
/// every later backbone step, i.e. `(L - K)` times.
pub fn mfpt_tree_cluster_sum(g: &Graph, s: Node, t: Node) -> Result<f64> {
    if s == t {
        return Err(Error::InvalidParams("cluster sum needs s != t".into()));
    }
    let w = cluster_weights(g, s, t)?;
    let l = w.len() as u128;
    let total: u128 = w
        .iter()
        .enumerate()
        .map(|(k, &wk)| wk as u128 * (l - k as u128))
        .sum();
    Ok(total as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
}

/// Sample mean and standard error of the simple-random-walk hitting time.
pub fn mfpt_monte_carlo<R: Rng + ?Sized>(
    g: &Graph,
    s: Node,
    t: Node,
    runs: usize,
    rng: &mut R,
) -> Result<McEstimate> {
    g.check_node(s)?;
    g.check_node(t)?;
    if runs == 0 {
        return Err(Error::InvalidParams("runs must be >= 1".into()));
    }
    if g.bfs_distances(t)[s].is_none() {
        return Err(Error::Disconnected(format!("{t} unreachable from {s}")));
    }
    let mut sum = 0.0;
    let mut sq = 0.0;
    for _ in 0..runs {
        let mut v = s;
        let mut steps = 0u64;
        while v != t {
            let nb = g.neighbors(v);
            v = nb[rng.random_range(0..nb.len())];
            steps += 1;
        }
        let x = steps as f64;
        sum += x;
        sq += x * x;
    }
    let n = runs as f64;
    let mean = sum / n;
    let var = if runs > 1 {
        ((sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_err: (var / n).sqrt(),
    })
}

/// Depth-`l` node on the first-child chain of a breadth-first numbered
/// `c`-ary tree (root 0).
pub fn cary_backbone_node(c: usize, l: usize) -> Node {
    (0..l).fold(0, |v, _| c * v + 1)
}

/// Shape of a complete `c`-ary tree query: root to depth `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaryQuery {
    pub c: usize,
    pub h: usize,
    pub l: usize,
}

pub struct MfptQuery<'a> {
    pub graph: &'a Graph,
    pub source: Node,
    pub target: Node,
    /// Present when `graph` is the complete tree described here and the
    /// endpoints are its root and backbone node.
    pub cary: Option<CaryQuery>,
    /// Monte Carlo sample size.
    pub runs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MfptEstimate {
    pub value: f64,
    pub std_err: Option<f64>,
}

pub trait MfptOracle: Send + Sync {
    fn name(&self) -> &'static str;
    fn estimate(&self, query: &MfptQuery<'_>, rng: &mut SimRng) -> Result<MfptEstimate>;
}

pub struct LinearSolve;
pub struct ClusterSum;
pub struct MonteCarlo;
pub struct CaryFormula;

fn exact(value: f64) -> MfptEstimate {
    MfptEstimate { value, std_err: None }
}

impl MfptOracle for LinearSolve {
    fn name(&self) -> &'static str {
        "solve"
    }
    fn estimate(&self, q: &MfptQuery<'_>, _rng: &mut SimRng) -> Result<MfptEstimate> {
        g_check(q)?;
        Ok(exact(mfpt_linear_solve(q.graph, q.target)?.values[q.source]))
    }
}

impl MfptOracle for ClusterSum {
    fn name(&self) -> &'static str {
        "cluster"
    }
    fn estimate(&self, q: &MfptQuery<'_>, _rng: &mut SimRng) -> Result<MfptEstimate> {
        if q.source == q.target {
            return Ok(exact(0.0));
        }
        Ok(exact(mfpt_tree_cluster_sum(q.graph, q.source, q.target)?))
    }
}

impl MfptOracle for MonteCarlo {
    fn name(&self) -> &'static str {
        "mc"
    }
    fn estimate(&self, q: &MfptQuery<'_>, rng: &mut SimRng) -> Result<MfptEstimate> {
        let e = mfpt_monte_carlo(q.graph, q.source, q.target, q.runs, rng)?;
        Ok(MfptEstimate {
            value: e.mean,
            std_err: Some(e.std_err),
        })
    }
}

impl MfptOracle for CaryFormula {
    fn name(&self) -> &'static str {
        "formula"
    }
    fn estimate(&self, q: &MfptQuery<'_>, _rng: &mut SimRng) -> Result<MfptEstimate> {
        let shape = q.cary.ok_or_else(|| {
            Error::InvalidParams("the `formula` oracle only applies to complete c-ary trees".into())
        })?;
        Ok(exact(mfpt_cary_exact(shape.c as u32, shape.h as u32, shape.l as u32)?))
    }
}

fn g_check(q: &MfptQuery<'_>) -> Result<()> {
    q.graph.check_node(q.source)?;
    q.graph.check_node(q.target)
}

pub struct OracleRegistry {
    oracles: Vec<Box<dyn MfptOracle>>,
}

impl Default for OracleRegistry {
    fn default() -> Self {
        Self {
            oracles: vec![
                Box::new(CaryFormula),
                Box::new(LinearSolve),
                Box::new(ClusterSum),
                Box::new(MonteCarlo),
            ],
        }
    }
}

impl OracleRegistry {
    pub fn register(&mut self, oracle: Box<dyn MfptOracle>) {
        self.oracles.retain(|o| o.name() != oracle.name());
        self.oracles.push(oracle);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MfptOracle> {
        self.oracles
            .iter()
            .find(|o| o.name() == name)
            .map(|o| o.as_ref())
            .ok_or_else(|| Error::Unknown {
                kind: "MFPT oracle",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.oracles.iter().map(|o| o.name()).collect()
    }
}
