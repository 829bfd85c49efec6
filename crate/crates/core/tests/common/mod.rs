#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthant_walks::algebra::Rational;
use orthant_walks::{models, StepSet};
use num_bigint::{BigInt, BigUint};

/// Models exercised by the oracle tests, with names.
pub fn oracle_models() -> Vec<(&'static str, StepSet)> {
    let mut v = models::quarter_plane();
    v.push(("dyck", models::dyck()));
    v.push(("octant_eight", models::octant_eight()));
    v.push(("octant_twelve", models::octant_twelve()));
    v
}

/// Union of sign-flip orbits: each support `A ⊆ {1..d}` contributes every
/// vector with nonzero entries exactly on `A`.
pub fn model_from_supports(dim: usize, supports: &[u32]) -> Option<StepSet> {
    let mut steps = Vec::new();
    for &mask in supports {
        let axes: Vec<usize> = (0..dim).filter(|k| mask >> k & 1 == 1).collect();
        for signs in 0..1u32 << axes.len() {
            let mut v = vec![0; dim];
            for (i, &k) in axes.iter().enumerate() {
                v[k] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            steps.push(v);
        }
    }
    StepSet::validate(dim, steps).ok()
}

/// A valid highly symmetric model with `dim ≤ 3`, drawn from `rng`.
pub fn random_model(rng: &mut impl Rng) -> StepSet {
    loop {
        let dim = rng.gen_range(1..=3);
        let all = (1u32 << dim) - 1;
        let supports: Vec<u32> = (1..=all).filter(|_| rng.gen_bool(0.5)).collect();
        if let Some(m) = model_from_supports(dim, &supports) {
            return m;
        }
    }
}

pub fn seeded_models(seed: u64, count: usize) -> Vec<StepSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_model(&mut rng)).collect()
}

pub fn as_rationals(v: &[BigUint]) -> Vec<Rational> {
    v.iter()
        .map(|x| Rational::from_integer(BigInt::from(x.clone())))
        .collect()
}
