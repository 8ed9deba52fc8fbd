use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::rng::SimRng;

use super::{geometric_sizes, FamilyParams, GraphFamily, CONNECT_RETRIES, SEARCH_MAX_NODES, SEEDS_PER_SIZE};

/// Connected simple `c`-regular graph on `n` nodes.
///
/// Stubs are paired at random; pairs that would form a self-loop or a repeated
/// edge are set aside and re-paired among themselves. A pairing that gets
/// stuck, or a disconnected result, is thrown away and redrawn.
pub fn random_regular<R: Rng + ?Sized>(n: usize, c: usize, rng: &mut R) -> Result<Graph> {
    if n == 0 || c >= n {
        return Err(Error::InvalidParams(format!("need 0 < n and c < n, got n={n}, c={c}")));
    }
    if !(n * c).is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("n*c must be even, got n={n}, c={c}")));
    }
    if (c == 0 && n > 1) || (c == 1 && n > 2) {
        return Err(Error::GenerationFailed(format!(
            "no connected {c}-regular graph on {n} nodes"
        )));
    }
    for _ in 0..CONNECT_RETRIES {
        if let Some(edges) = try_pairing(n, c, rng) {
            let g = build_graph(&edges, Some(n))?;
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(Error::GenerationFailed(format!(
        "random {c}-regular graph on {n} nodes: {CONNECT_RETRIES} attempts exhausted"
    )))
}

fn try_pairing<R: Rng + ?Sized>(n: usize, c: usize, rng: &mut R) -> Option<Vec<(usize, usize)>> {
    let mut edges = Vec::with_capacity(n * c / 2);
    let mut present = HashSet::with_capacity(n * c);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, c)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && present.insert((a, b)) {
                edges.push((a, b));
            } else {
                *leftover.entry(a).or_default() += 1;
                *leftover.entry(b).or_default() += 1;
            }
        }
        if !leftover.is_empty() && !pairable(&leftover, &present) {
            return None;
        }
        stubs = leftover
            .into_iter()
            .flat_map(|(v, k)| std::iter::repeat_n(v, k))
            .collect();
    }
    Some(edges)
}

/// Some two distinct leftover nodes are not yet adjacent.
fn pairable(leftover: &BTreeMap<usize, usize>, present: &HashSet<(usize, usize)>) -> bool {
    let nodes: Vec<usize> = leftover.keys().copied().collect();
    nodes.iter().enumerate().any(|(i, &a)| {
        nodes[i + 1..]
            .iter()
            .any(|&b| !present.contains(&(a.min(b), a.max(b))))
    })
}

pub struct RandomRegular;

impl GraphFamily for RandomRegular {
    fn name(&self) -> &'static str {
        "regular"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["random-regular"]
    }

    fn generate(&self, params: &FamilyParams, rng: &mut SimRng) -> Result<Graph> {
        let n = FamilyParams::need(params.n, self.name(), "n")?;
        let c = FamilyParams::need(params.c, self.name(), "c")?;
        random_regular(n, c, rng)
    }

    fn search_schedule(&self, c_target: f64, _h_target: usize, tol_c: f64) -> Result<Vec<FamilyParams>> {
        let c = c_target.round();
        if c < 2.0 || (c - c_target).abs() > tol_c {
            return Ok(Vec::new());
        }
        let c = c as usize;
        let mut out = Vec::new();
        let mut last = 0;
        for n in geometric_sizes(c + 1, 1.15, SEARCH_MAX_NODES) {
            let n = if n * c % 2 == 1 { n + 1 } else { n };
            if n <= last {
                continue;
            }
            last = n;
            for _ in 0..SEEDS_PER_SIZE {
                out.push(FamilyParams {
                    n: Some(n),
                    c: Some(c),
                    ..Default::default()
                });
            }
        }
        Ok(out)
    }
}
