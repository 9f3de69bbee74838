//! Seeded random draws shared by the samplers and property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::vector::Vector;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal vector in `R^dim`.
pub fn gaussian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector {
    Vector::from_raw((0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
}

/// Uniform point of the axis box `[lo, hi]`.
pub fn uniform_in_box<R: Rng + ?Sized>(lo: &Vector, hi: &Vector, rng: &mut R) -> Vector {
    lo.zip_map(hi, |a, b| if b > a { rng.random_range(a..=b) } else { a })
}

/// Uniform direction on the unit sphere of `R^dim`.
pub fn unit_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector {
    loop {
        if let Some(u) = gaussian(dim, rng).normalized() {
            return u;
        }
    }
}
