//! Graph families behind a common [`GraphFamily`] trait.
//!
//! Families are registered by name in a [`Registry`] and selected at runtime
//! (the CLI's `--family` flag). Each family reads the fields of
//! [`FamilyParams`] it needs, and knows how to lay out a parameter search for
//! a target mean degree `c` and half-diameter `H` (see [`find_graph_with`]).

mod barabasi_albert;
mod erdos_renyi;
mod lattice;
mod regular;
mod scale_free;
mod small_world;
mod tree;

pub use barabasi_albert::{barabasi_albert, BarabasiAlbert};
pub use erdos_renyi::{erdos_renyi, ErdosRenyi};
pub use lattice::{lattice, Lattice};
pub use regular::{random_regular, RandomRegular};
pub use scale_free::{directed_scale_free, DirectedScaleFree, ScaleFreeParams};
pub use small_world::{watts_strogatz, WattsStrogatz};
pub use tree::{c_ary_tree, cary_node_count, CaryTree};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{stream_rng, SimRng};

/// Upper bound on generated node counts.
pub const MAX_NODES: usize = 1 << 26;

/// Regeneration budget for families that must return a connected graph.
pub const CONNECT_RETRIES: usize = 200;

/// Parameter record shared by all families; each family reads its own fields.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: Option<usize>,
    /// Degree for regular graphs, child count for trees.
    pub c: Option<usize>,
    pub h: Option<usize>,
    /// Ring-lattice neighbor count for small-world graphs.
    pub k: Option<usize>,
    /// Edges per arriving node for preferential attachment.
    pub m: Option<usize>,
    /// Edge probability for Erdos-Renyi graphs.
    pub q: Option<f64>,
    /// Rewiring probability (small-world) or edge-between-existing-nodes
    /// probability (scale-free).
    pub beta: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub delta_in: Option<f64>,
    pub delta_out: Option<f64>,
    pub dims: Option<Vec<usize>>,
    pub periodic: bool,
}

fn missing(family: &str, field: &str) -> Error {
    Error::InvalidParams(format!("family `{family}` requires `{field}`"))
}

impl FamilyParams {
    pub(crate) fn need<T: Copy>(v: Option<T>, family: &str, field: &str) -> Result<T> {
        v.ok_or_else(|| missing(family, field))
    }
}

pub trait GraphFamily: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;

    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn generate(&self, params: &FamilyParams, rng: &mut SimRng) -> Result<Graph>;

    /// Candidate parameters for hitting `(c_target, h_target)`, in the order
    /// they should be tried. May be long; the caller stops at its budget.
    fn search_schedule(&self, c_target: f64, h_target: usize, tol_c: f64)
        -> Result<Vec<FamilyParams>>;

    /// Whether `generate` ignores the rng.
    fn deterministic(&self) -> bool {
        false
    }

    /// Whether `find_graph_with` should check the mean degree against
    /// `c_target` (trees are parameterized by child count instead).
    fn targets_mean_degree(&self) -> bool {
        true
    }

    /// Whether disconnected draws are reduced to their largest component
    /// during a parameter search.
    fn reduce_to_largest_component(&self) -> bool {
        false
    }
}

/// Named collection of graph families.
pub struct Registry {
    families: Vec<Box<dyn GraphFamily>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(CaryTree));
        r.register(Box::new(RandomRegular));
        r.register(Box::new(Lattice));
        r.register(Box::new(WattsStrogatz));
        r.register(Box::new(ErdosRenyi));
        r.register(Box::new(BarabasiAlbert));
        r.register(Box::new(DirectedScaleFree));
        r
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            families: Vec::new(),
        }
    }

    /// Adds a family; a later registration shadows an earlier one of the same name.
    pub fn register(&mut self, family: Box<dyn GraphFamily>) {
        self.families.retain(|f| f.name() != family.name());
        self.families.push(family);
    }

    pub fn get(&self, name: &str) -> Result<&dyn GraphFamily> {
        let key = name.to_ascii_lowercase();
        self.families
            .iter()
            .find(|f| f.name() == key || f.aliases().contains(&key.as_str()))
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::Unknown {
                kind: "graph family",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }
}

/// A fully specified generation request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: String,
    pub params: FamilyParams,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self, registry: &Registry) -> Result<Graph> {
        let family = registry.get(&self.family)?;
        family.generate(&self.params, &mut crate::rng::seeded(self.seed))
    }
}

/// Brute-force parameter search: generates candidates from the family's
/// schedule until one has mean degree within `tol_c` of `c_target` and
/// half-diameter exactly `h_target`.
///
/// Every attempt (one candidate, one seed) costs one unit of `budget`. The
/// search also stops early once several consecutive attempts overshoot
/// `h_target`, since schedules grow the graph monotonically.
pub fn find_graph_with(
    family: &dyn GraphFamily,
    c_target: f64,
    h_target: usize,
    tol_c: f64,
    budget: usize,
    rng: &mut SimRng,
) -> Result<Graph> {
    use rand::Rng;

    if budget == 0 {
        return Err(Error::InvalidParams("budget must be >= 1".into()));
    }
    let not_found = |reason: String| Error::NotFound { budget, reason };
    let schedule = family.search_schedule(c_target, h_target, tol_c)?;
    if schedule.is_empty() {
        return Err(not_found(format!(
            "family `{}` cannot target c={c_target}, H={h_target}",
            family.name()
        )));
    }
    const OVERSHOOT_STREAK: usize = 8;
    let base: u64 = rng.random();
    let mut overshoot = 0;
    let mut attempts = 0;
    for (i, params) in schedule.iter().enumerate() {
        if attempts == budget {
            break;
        }
        attempts += 1;
        let mut local = stream_rng(base, &[i as u64]);
        let g = match family.generate(params, &mut local) {
            Ok(g) => g,
            Err(Error::GenerationFailed(_)) | Err(Error::InvalidParams(_)) => continue,
            Err(e) => return Err(e),
        };
        let g = if family.reduce_to_largest_component() && !g.is_connected() {
            g.largest_component().0
        } else {
            g
        };
        if g.node_count() < 2 || !g.is_connected() {
            continue;
        }
        if family.targets_mean_degree() {
            let mean = g.degree_stats().mean;
            if (mean - c_target).abs() > tol_c {
                continue;
            }
        }
        let h = g.half_diameter()?;
        if h == h_target {
            return Ok(g);
        }
        if h > h_target {
            overshoot += 1;
            if overshoot >= OVERSHOOT_STREAK {
                return Err(not_found(format!(
                    "half-diameter overshoots H={h_target} for `{}` after {attempts} attempts",
                    family.name()
                )));
            }
        } else {
            overshoot = 0;
        }
    }
    Err(not_found(format!(
        "no `{}` graph with c~{c_target}, H={h_target} in {attempts} attempts",
        family.name()
    )))
}

/// Geometric grid of node counts `start, start*ratio, ...` up to `max`,
/// strictly increasing.
pub(crate) fn geometric_sizes(start: usize, ratio: f64, max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut x = start.max(1) as f64;
    let mut last = 0;
    while (x as usize) <= max {
        let n = x.round() as usize;
        if n > last {
            out.push(n);
            last = n;
        }
        x = (x * ratio).max(x + 1.0);
    }
    out
}

/// Largest graph any search schedule will propose.
pub(crate) const SEARCH_MAX_NODES: usize = 200_000;

/// Attempts per candidate size in search schedules.
pub(crate) const SEEDS_PER_SIZE: usize = 3;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn registry_lookup() {
        let r = Registry::default();
        assert_eq!(r.get("cary").unwrap().name(), "cary");
        assert_eq!(r.get("ER").unwrap().name(), "erdos-renyi");
        assert!(matches!(r.get("nope"), Err(Error::Unknown { .. })));
        assert_eq!(r.names().len(), 7);
    }

    #[test]
    fn registry_shadowing() {
        let mut r = Registry::default();
        r.register(Box::new(CaryTree));
        assert_eq!(r.names().len(), 7);
    }

    #[test]
    fn geometric_grid_is_increasing() {
        let g = geometric_sizes(3, 1.2, 100);
        assert_eq!(g[0], 3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(*g.last().unwrap() <= 100);
    }

    #[test]
    fn find_tree_first_try() {
        let r = Registry::default();
        let g = find_graph_with(r.get("cary").unwrap(), 3.0, 2, 0.0, 1, &mut seeded(0)).unwrap();
        assert_eq!(g.node_count(), 13);
        assert_eq!(g.half_diameter().unwrap(), 2);
    }

    #[test]
    fn find_regular_c6_h3() {
        let r = Registry::default();
        let g = find_graph_with(r.get("regular").unwrap(), 6.0, 3, 0.0, 200, &mut seeded(1)).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 6));
        assert_eq!(g.half_diameter().unwrap(), 3);
    }

    #[test]
    fn find_impossible_target() {
        let r = Registry::default();
        let err = find_graph_with(r.get("regular").unwrap(), 100.0, 50, 0.5, 10, &mut seeded(2));
        assert!(matches!(err, Err(Error::NotFound { .. })), "{err:?}");
    }

    #[test]
    fn find_zero_budget_rejected() {
        let r = Registry::default();
        assert!(find_graph_with(r.get("cary").unwrap(), 2.0, 2, 0.0, 0, &mut seeded(0)).is_err());
    }

    #[test]
    fn spec_generate_is_deterministic() {
        let r = Registry::default();
        let spec = GeneratorSpec {
            family: "ws".into(),
            params: FamilyParams {
                n: Some(40),
                k: Some(4),
                beta: Some(0.3),
                ..Default::default()
            },
            seed: 5,
        };
        assert_eq!(spec.generate(&r).unwrap(), spec.generate(&r).unwrap());
    }
}
