//! Simulation and analysis of two searchers on graphs whose edge weights are
//! perturbed by a two-point uncertainty law.
//!
//! The *prior* searcher (D) computes a unit-weight shortest path up front and
//! walks it, paying whatever extra weight is realized on each edge. The
//! *greedy* searcher (G) only sees the edges incident to its current vertex,
//! re-samples their extra weights at every step and follows a minimum-weight
//! edge. The crate provides
//!
//! * [`graph`]: an immutable compressed-adjacency graph with BFS utilities,
//! * [`generators`]: a registry of graph families selectable by name,
//! * [`uncertainty`]: the two-point extra-weight law and its moments,
//! * [`searchers`]: single head-to-head trials,
//! * [`theory`]: closed forms for the weight ratio, optimal `p`, critical `u`,
//! * [`mfpt`]: independent mean-first-passage-time oracles (also a registry),
//! * [`sweep`]: deterministic parallel parameter sweeps,
//! * [`io`]: edge lists, CSV and JSON emission used by the `gsu` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod mfpt;
pub mod rng;
pub mod searchers;
pub mod sweep;
pub mod theory;
pub mod uncertainty;

pub use error::{Error, Result};
pub use graph::{DegreeStats, Graph, PathResult};
pub use uncertainty::UncertaintyModel;
