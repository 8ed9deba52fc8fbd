use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::rng::SimRng;

use super::{geometric_sizes, FamilyParams, GraphFamily, CONNECT_RETRIES, SEARCH_MAX_NODES};

/// Connected Watts-Strogatz graph: a ring where every node links to its `k`
/// nearest neighbors, then each lattice edge `(v, v + j)` has its far end
/// moved, with probability `beta`, to a uniform node that is neither `v` nor
/// already adjacent to `v`. The edge count stays `n k / 2`.
pub fn watts_strogatz<R: Rng + ?Sized>(n: usize, k: usize, beta: f64, rng: &mut R) -> Result<Graph> {
    if !k.is_multiple_of(2) || k >= n {
        return Err(Error::InvalidParams(format!("need even k < n, got n={n}, k={k}")));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParams(format!("beta must lie in [0, 1], got {beta}")));
    }
    if k == 0 && n > 1 {
        return Err(Error::GenerationFailed("k = 0 cannot be connected".into()));
    }
    for _ in 0..CONNECT_RETRIES {
        let g = rewired_ring(n, k, beta, rng)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(format!(
        "small-world n={n}, k={k}, beta={beta}: {CONNECT_RETRIES} attempts exhausted"
    )))
}

fn rewired_ring<R: Rng + ?Sized>(n: usize, k: usize, beta: f64, rng: &mut R) -> Result<Graph> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for v in 0..n {
        for j in 1..=k / 2 {
            let w = (v + j) % n;
            adj[v].insert(w);
            adj[w].insert(v);
        }
    }
    for j in 1..=k / 2 {
        for v in 0..n {
            let w = (v + j) % n;
            if !rng.random_bool(beta) || !adj[v].contains(&w) || adj[v].len() >= n - 1 {
                continue;
            }
            let fresh = loop {
                let x = rng.random_range(0..n);
                if x != v && !adj[v].contains(&x) {
                    break x;
                }
            };
            adj[v].remove(&w);
            adj[w].remove(&v);
            adj[v].insert(fresh);
            adj[fresh].insert(v);
        }
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(v, s)| s.iter().filter(move |&&w| w > v).map(move |&w| (v, w)))
        .collect();
    build_graph(&edges, Some(n))
}

pub struct WattsStrogatz;

const SEARCH_BETAS: [f64; 4] = [0.05, 0.1, 0.2, 0.4];

impl GraphFamily for WattsStrogatz {
    fn name(&self) -> &'static str {
        "small-world"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["ws", "watts-strogatz"]
    }

    fn generate(&self, params: &FamilyParams, rng: &mut SimRng) -> Result<Graph> {
        let n = FamilyParams::need(params.n, self.name(), "n")?;
        let k = FamilyParams::need(params.k, self.name(), "k")?;
        let beta = FamilyParams::need(params.beta, self.name(), "beta")?;
        watts_strogatz(n, k, beta, rng)
    }

    fn search_schedule(&self, c_target: f64, _h_target: usize, tol_c: f64) -> Result<Vec<FamilyParams>> {
        let k = (c_target / 2.0).round() * 2.0;
        if k < 2.0 || (k - c_target).abs() > tol_c {
            return Ok(Vec::new());
        }
        let k = k as usize;
        Ok(geometric_sizes(k + 2, 1.15, SEARCH_MAX_NODES)
            .into_iter()
            .flat_map(|n| {
                SEARCH_BETAS.iter().map(move |&beta| FamilyParams {
                    n: Some(n),
                    k: Some(k),
                    beta: Some(beta),
                    ..Default::default()
                })
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn no_rewiring_is_ring_lattice() {
        let g = watts_strogatz(20, 4, 0.0, &mut seeded(0)).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(0, 19) && g.has_edge(0, 18));
    }

    #[test]
    fn edge_count_is_invariant() {
        let mut rng = seeded(1);
        for beta in [0.0, 0.1, 0.5, 1.0] {
            for (n, k) in [(10, 4), (50, 6), (100, 2)] {
                let g = watts_strogatz(n, k, beta, &mut rng).unwrap();
                assert_eq!(g.edge_count(), n * k / 2, "n={n} k={k} beta={beta}");
                assert_eq!(g.degree_stats().mean, k as f64);
            }
        }
    }

    #[test]
    fn full_rewiring_changes_degrees() {
        let g = watts_strogatz(10, 4, 1.0, &mut seeded(3)).unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 40);
    }

    #[test]
    fn bad_params() {
        assert!(watts_strogatz(10, 3, 0.1, &mut seeded(0)).is_err());
        assert!(watts_strogatz(4, 4, 0.1, &mut seeded(0)).is_err());
        assert!(watts_strogatz(10, 4, 1.5, &mut seeded(0)).is_err());
    }
}
