//! Seeded random rational points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Scalar;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Coordinates `p / q` with `q` in `1..=4` and `|p / q| <= radius`.
pub fn random_point<S: Scalar, R: Rng + ?Sized>(rng: &mut R, dim: usize, radius: i64) -> Vec<S> {
    (0..dim)
        .map(|_| {
            let den = rng.gen_range(1..=4i64);
            let num = rng.gen_range(-radius * den..=radius * den);
            S::from_i64(num).unwrap() / S::from_i64(den).unwrap()
        })
        .collect()
}

/// `count` points from a ChaCha stream seeded with `seed`.
pub fn random_points<S: Scalar>(seed: u64, count: usize, dim: usize, radius: i64) -> Vec<Vec<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_point(&mut rng, dim, radius)).collect()
}
