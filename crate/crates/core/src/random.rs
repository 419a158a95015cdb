//! Seeded generators for random instances. Everything derives from a `u64`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::point::Point;
use crate::{Rational, RationalPoint};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| ≤ bound·q` and `1 ≤ q ≤ den`.
pub fn random_rational(rng: &mut InstanceRng, bound: i64, den: i64) -> Rational {
    let q = rng.gen_range(1..=den);
    let p = rng.gen_range(-bound * q..=bound * q);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_point(rng: &mut InstanceRng, d: usize, bound: i64, den: i64) -> RationalPoint {
    Point::new((0..d).map(|_| random_rational(rng, bound, den)).collect())
}

pub fn random_points(rng: &mut InstanceRng, n: usize, d: usize) -> Vec<RationalPoint> {
    (0..n).map(|_| random_point(rng, d, 10, 97)).collect()
}

/// Random integer cochain values in `-bound..=bound`.
pub fn random_integers(rng: &mut InstanceRng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// A random positive rational scale and a random translation, for
/// invariance checks.
pub fn random_similarity(rng: &mut InstanceRng, d: usize) -> (Rational, Vec<Rational>) {
    let scale = Rational::new(BigInt::from(rng.gen_range(1..=50)), BigInt::from(rng.gen_range(1..=50)));
    let shift = (0..d).map(|_| random_rational(rng, 20, 13)).collect();
    (scale, shift)
}
