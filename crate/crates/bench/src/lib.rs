//! Seeded inputs shared by the benchmarks.

use napier::{sample, AngleList};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One random floating-point angle list per dimension in `dims`.
pub fn lists(dims: impl IntoIterator<Item = usize>, seed: u64) -> Vec<AngleList> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    dims.into_iter().map(|n| sample::angle_list(&mut rng, n)).collect()
}
