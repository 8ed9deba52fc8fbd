//! Reproducible random streams for parallel work.
//!
//! Every unit of work (a sweep cell run, a generator attempt) derives its own
//! generator from `(master_seed, path...)`, so results do not depend on how
//! work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used throughout the crate.
pub type SimRng = ChaCha8Rng;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A derivation path below a master seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    pub master_seed: u64,
    pub path: Vec<u64>,
}

impl RngStream {
    pub fn new(master_seed: u64) -> Self {
        Self {
            master_seed,
            path: Vec::new(),
        }
    }

    pub fn child(&self, index: u64) -> Self {
        let mut path = self.path.clone();
        path.push(index);
        Self {
            master_seed: self.master_seed,
            path,
        }
    }

    /// 64-bit digest of the seed and path.
    pub fn key(&self) -> u64 {
        derive_seed(self.master_seed, &self.path)
    }

    pub fn rng(&self) -> SimRng {
        SimRng::seed_from_u64(self.key())
    }
}

/// Folds `path` into `master_seed` with a splitmix64 chain.
pub fn derive_seed(master_seed: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master_seed), |h, &p| {
            splitmix64(h.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ p)
        })
}

pub fn stream_rng(master_seed: u64, path: &[u64]) -> SimRng {
    SimRng::seed_from_u64(derive_seed(master_seed, path))
}

pub fn seeded(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
