use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::rng::SimRng;

use super::{geometric_sizes, FamilyParams, GraphFamily, SEARCH_MAX_NODES};

/// `G(n, q)`: each of the `n (n - 1) / 2` pairs is an edge independently with
/// probability `q`. Uses geometric skipping over absent pairs, so the cost is
/// proportional to the number of edges.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, q: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParams(format!("q must lie in [0, 1], got {q}")));
    }
    let mut edges = Vec::new();
    if q >= 1.0 {
        for v in 0..n {
            for w in 0..v {
                edges.push((w, v));
            }
        }
    } else if q > 0.0 {
        let log_miss = (1.0 - q).ln();
        // pairs (w, v) with w < v enumerated row by row
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.random();
            let skip = ((1.0 - r).ln() / log_miss).floor();
            w = w.saturating_add(1).saturating_add(skip.min(i64::MAX as f64 / 4.0) as i64);
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as usize, v));
            }
        }
    }
    build_graph(&edges, Some(n))
}

pub struct ErdosRenyi;

const SEARCH_DEGREE_SCALE: [f64; 3] = [1.0, 1.1, 1.25];

impl GraphFamily for ErdosRenyi {
    fn name(&self) -> &'static str {
        "erdos-renyi"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["er", "gnp"]
    }

    fn generate(&self, params: &FamilyParams, rng: &mut SimRng) -> Result<Graph> {
        let n = FamilyParams::need(params.n, self.name(), "n")?;
        let q = FamilyParams::need(params.q, self.name(), "q")?;
        erdos_renyi(n, q, rng)
    }

    /// Expected degree `c * scale` on a geometric grid of sizes; draws are
    /// reduced to their largest component before the targets are checked.
    fn search_schedule(&self, c_target: f64, _h_target: usize, _tol_c: f64) -> Result<Vec<FamilyParams>> {
        if c_target <= 0.0 {
            return Ok(Vec::new());
        }
        let start = (c_target.ceil() as usize + 2).max(8);
        Ok(geometric_sizes(start, 1.15, SEARCH_MAX_NODES)
            .into_iter()
            .flat_map(|n| {
                SEARCH_DEGREE_SCALE.iter().map(move |&s| FamilyParams {
                    n: Some(n),
                    q: Some((c_target * s / (n - 1) as f64).min(1.0)),
                    ..Default::default()
                })
            })
            .collect())
    }

    fn reduce_to_largest_component(&self) -> bool {
        true
    }
}
