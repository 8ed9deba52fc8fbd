use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::rng::SimRng;

use super::{FamilyParams, GraphFamily, MAX_NODES};

/// Grid graph with the given side lengths, row-major numbering (last axis
/// fastest). A periodic lattice wraps every axis and is `2 * dims.len()`
/// regular; wrapping needs sides of at least 3 to stay simple.
pub fn lattice(dims: &[usize], periodic: bool) -> Result<Graph> {
    if dims.is_empty() {
        return Err(Error::InvalidParams("lattice needs at least one dimension".into()));
    }
    let min_side = if periodic { 3 } else { 2 };
    if let Some(&d) = dims.iter().find(|&&d| d < min_side) {
        return Err(Error::InvalidParams(format!(
            "lattice side {d} < {min_side}{}",
            if periodic { " (periodic)" } else { "" }
        )));
    }
    let n = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&n| n <= MAX_NODES)
        .ok_or_else(|| Error::TooLarge(format!("lattice {dims:?}")))?;

    // stride of axis a = product of the sides after it
    let mut strides = vec![1usize; dims.len()];
    for a in (0..dims.len() - 1).rev() {
        strides[a] = strides[a + 1] * dims[a + 1];
    }
    let mut edges = Vec::with_capacity(n * dims.len());
    for v in 0..n {
        for (&side, &stride) in dims.iter().zip(&strides) {
            let coord = (v / stride) % side;
            if coord + 1 < side {
                edges.push((v, v + stride));
            } else if periodic {
                edges.push((v, v - coord * stride));
            }
        }
    }
    build_graph(&edges, Some(n))
}

pub struct Lattice;

impl GraphFamily for Lattice {
    fn name(&self) -> &'static str {
        "lattice"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["grid"]
    }

    fn generate(&self, params: &FamilyParams, _rng: &mut SimRng) -> Result<Graph> {
        let dims = params
            .dims
            .as_deref()
            .ok_or_else(|| Error::InvalidParams("family `lattice` requires `dims`".into()))?;
        lattice(dims, params.periodic)
    }

    /// Periodic hypercubic lattices: `c / 2` axes of equal side `s`, whose
    /// diameter is `(c / 2) * floor(s / 2)`.
    fn search_schedule(&self, c_target: f64, h_target: usize, tol_c: f64) -> Result<Vec<FamilyParams>> {
        let c = (c_target / 2.0).round() * 2.0;
        if c < 2.0 || (c - c_target).abs() > tol_c {
            return Ok(Vec::new());
        }
        let axes = (c / 2.0) as usize;
        let max_side = 4 * h_target + 4;
        Ok((3..=max_side)
            .map(|s| FamilyParams {
                dims: Some(vec![s; axes]),
                periodic: true,
                ..Default::default()
            })
            .collect())
    }

    fn deterministic(&self) -> bool {
        true
    }
}
