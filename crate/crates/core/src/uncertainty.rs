//! Two-point extra-weight law: an edge costs `1 + xi`, with `xi = u` with
//! probability `p` and `xi = 0` otherwise. A fresh `xi` is drawn on every
//! observation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyModel {
    u: f64,
    p: f64,
}

impl UncertaintyModel {
    pub fn new(u: f64, p: f64) -> Result<Self> {
        if !(u >= 0.0 && u.is_finite()) {
            return Err(Error::InvalidParams(format!("u must be finite and >= 0, got {u}")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParams(format!("p must lie in [0, 1], got {p}")));
        }
        Ok(Self { u, p })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// One realization of `xi`.
    #[inline]
    pub fn sample_xi<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.realized(rng) {
            self.u
        } else {
            0.0
        }
    }

    /// Whether the extra weight is realized on one draw.
    #[inline]
    pub fn realized<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        rng.random_bool(self.p)
    }

    /// `E[xi] = u p`.
    pub fn expected_xi(&self) -> f64 {
        self.u * self.p
    }

    /// `E[min of c draws] = u p^c`: the minimum is `u` only if all draws are.
    pub fn expected_eps(&self, c: u32) -> f64 {
        assert!(c >= 1, "expected_eps needs at least one draw");
        self.u * self.p.powi(c as i32)
    }
}
