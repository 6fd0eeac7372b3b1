//! Seeded random number generation.
//!
//! Every randomized routine in the crate draws from [`GraphRng`], which is
//! ChaCha with 8 rounds seeded through `seed_from_u64`. The stream is
//! specified independently of platform and word size, so a seed reproduces the
//! same graph, sample, labeling or layout everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GraphRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}
