use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::rng::SimRng;

use super::{geometric_sizes, FamilyParams, GraphFamily, SEARCH_MAX_NODES};

/// Preferential attachment: start from `m` isolated nodes; every arriving node
/// links to `m` distinct existing nodes chosen with probability proportional
/// to degree (uniformly while all degrees are zero). `(n - m) m` edges.
pub fn barabasi_albert<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 || m >= n {
        return Err(Error::InvalidParams(format!("need 1 <= m < n, got n={n}, m={m}")));
    }
    let mut edges = Vec::with_capacity((n - m) * m);
    // each node appears once per incident edge end
    let mut ends: Vec<usize> = Vec::with_capacity(2 * (n - m) * m);
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    for v in m..n {
        chosen.clear();
        if ends.is_empty() {
            // all existing degrees are zero; with exactly m seeds every seed is picked
            while chosen.len() < m {
                let w = rng.random_range(0..v);
                if !chosen.contains(&w) {
                    chosen.push(w);
                }
            }
        } else {
            while chosen.len() < m {
                let w = ends[rng.random_range(0..ends.len())];
                if !chosen.contains(&w) {
                    chosen.push(w);
                }
            }
        }
        for &w in &chosen {
            edges.push((w, v));
            ends.push(w);
            ends.push(v);
        }
    }
    build_graph(&edges, Some(n))
}

pub struct BarabasiAlbert;

impl GraphFamily for BarabasiAlbert {
    fn name(&self) -> &'static str {
        "barabasi-albert"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["ba"]
    }

    fn generate(&self, params: &FamilyParams, rng: &mut SimRng) -> Result<Graph> {
        let n = FamilyParams::need(params.n, self.name(), "n")?;
        let m = FamilyParams::need(params.m, self.name(), "m")?;
        barabasi_albert(n, m, rng)
    }

    /// Mean degree is `2 m (n - m) / n`, so `m = round(c / 2)`.
    fn search_schedule(&self, c_target: f64, _h_target: usize, _tol_c: f64) -> Result<Vec<FamilyParams>> {
        let m = (c_target / 2.0).round().max(1.0) as usize;
        Ok(geometric_sizes(m + 1, 1.15, SEARCH_MAX_NODES)
            .into_iter()
            .flat_map(|n| {
                std::iter::repeat_n(
                    FamilyParams {
                        n: Some(n),
                        m: Some(m),
                        ..Default::default()
                    },
                    super::SEEDS_PER_SIZE,
                )
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn edge_counts() {
        let g = barabasi_albert(10, 2, &mut seeded(0)).unwrap();
        assert_eq!(g.edge_count(), 16);
        let t = barabasi_albert(5, 1, &mut seeded(1)).unwrap();
        assert_eq!(t.edge_count(), 4);
        assert!(t.is_tree());
    }

    #[test]
    fn hubs_form() {
        let g = barabasi_albert(2000, 3, &mut seeded(2)).unwrap();
        let s = g.degree_stats();
        assert!(s.max as f64 >= s.mean);
        assert!(s.max as f64 > 5.0 * s.mean);
        assert!(g.is_connected());
    }

    #[test]
    fn bad_m() {
        assert!(barabasi_albert(5, 0, &mut seeded(0)).is_err());
        assert!(barabasi_albert(5, 5, &mut seeded(0)).is_err());
    }
}
