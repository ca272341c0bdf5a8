//! Shared fixtures: a corpus of gap sets and a seeded random generator.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shiftlab_core::sgap::SGapSpec;

/// Gap sets exercised throughout the suite.
pub const CORPUS: &[&str] = &[
    "{0}",
    "{1}",
    "{2}",
    "{0,1}",
    "{0,2}",
    "{1,2}",
    "{3,4}",
    "{0,1,2}",
    "{0,2,5}",
    "{0,1,2,4,8,16,32}",
    "co{}",
    "co{0}",
    "co{3}",
    "co{0,3}",
    "co{0,1,2}",
    "ep:pre=;pat=1,0",
    "ep:pre=;pat=0,1",
    "ep:pre=;pat=0,0,1",
    "ep:pre=1;pat=1,0,0",
    "ep:pre=1,0;pat=0,1,1",
];

pub fn corpus() -> Vec<SGapSpec> {
    CORPUS.iter().map(|s| s.parse().expect("corpus entry parses")).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random explicit, cofinite or eventually periodic gap set.
pub fn random_spec<R: Rng>(rng: &mut R) -> SGapSpec {
    loop {
        let spec = match rng.gen_range(0..3) {
            0 => {
                let size = rng.gen_range(1..=6);
                SGapSpec::explicit((0..size).map(|_| rng.gen_range(0..=12)))
            }
            1 => {
                let size = rng.gen_range(0..=4);
                SGapSpec::cofinite((0..size).map(|_| rng.gen_range(0..=8)))
            }
            _ => {
                let pre = (0..rng.gen_range(0..=4)).map(|_| rng.gen_bool(0.5)).collect();
                let period = (0..rng.gen_range(1..=4)).map(|_| rng.gen_bool(0.5)).collect();
                SGapSpec::eventually_periodic(pre, period)
            }
        };
        if let Ok(spec) = spec {
            return spec;
        }
    }
}
