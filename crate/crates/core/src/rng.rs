//! Seed derivation.
//!
//! Every randomized component takes an explicit `u64` seed and builds a
//! ChaCha12 generator from it, so results are reproducible across platforms
//! and `rand` upgrades. Derived streams (per episode, per decision step) come
//! from [`derive_seed`], a SplitMix64 step over the base seed mixed with the
//! stream index — documented here because reports embed the scheme name.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Name of the seed-derivation scheme, embedded in batch reports.
pub const SEED_SCHEME: &str = "splitmix64(base ^ GOLDEN*(index+1))";

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of independent stream `index` from `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ GOLDEN.wrapping_mul(index.wrapping_add(1)))
}

/// The generator used throughout: explicit-seed ChaCha12.
pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}
