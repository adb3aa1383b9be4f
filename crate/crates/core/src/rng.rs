// SPDX-License-Identifier: Apache-2.0

//! Seeded randomness.
//!
//! Every randomized routine draws from a ChaCha8 stream keyed by a 64-bit
//! seed. Independent trials use distinct stream ids of the same key, so a
//! trial can be replayed without regenerating the ones before it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator keyed by `seed`.
pub fn derived(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Work cap for canonicalization and exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget(pub u64);

impl WorkBudget {
    pub const DEFAULT: WorkBudget = WorkBudget(5_000_000);

    /// Reads `SCHREIER_WORK_BUDGET`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var("SCHREIER_WORK_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(WorkBudget)
            .unwrap_or(Self::DEFAULT)
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}
