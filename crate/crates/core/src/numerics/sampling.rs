use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::linalg::norm;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point on the unit sphere `S^{n−1} ⊂ ℝⁿ`.
pub fn sphere_point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let len = norm(&v);
        if len > 1e-8 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}

/// Uniform point of the open simplex `{w > 0, Σw = 1}` with `d` weights.
pub fn simplex_point<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..d).map(|_| Exp1.sample(rng)).collect::<Vec<f64>>();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x: f64| x / total).collect()
}

pub fn angle<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(0.0..core::f64::consts::TAU)
}
