//! Deterministic random streams.
//!
//! Every randomized instance is generated from a ChaCha8 stream seeded with
//! a 64-bit *instance seed*. For harness trial `k` under suite seed `s` the
//! instance seed is `splitmix64(s ^ splitmix64(k))`, so trials are
//! independent of each other and of execution order, and the instance seed
//! alone reproduces the instance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type InstanceRng = ChaCha8Rng;

/// SplitMix64 output function applied to `x + γ`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial))
}

pub fn instance_rng(instance_seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(instance_seed)
}
