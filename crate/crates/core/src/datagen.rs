//! Seeded input generators.
//!
//! All generators draw from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so every output is a pure function of its parameters.
//! Tags are assigned `0..n` in generation order.

use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::keys::Record;
use crate::{Error, Result};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The two normal parameter sets used by the benchmarks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalPreset {
    /// mean 2^63, sd 2^61
    Wide,
    /// mean 2^32, sd 2^30
    Narrow,
}

impl NormalPreset {
    pub fn mean(self) -> f64 {
        match self {
            Self::Wide => libm::ldexp(1.0, 63),
            Self::Narrow => libm::ldexp(1.0, 32),
        }
    }

    pub fn sd(self) -> f64 {
        match self {
            Self::Wide => libm::ldexp(1.0, 61),
            Self::Narrow => libm::ldexp(1.0, 30),
        }
    }
}

pub const DEFAULT_ZIPF_EXPONENT: f64 = 1.0;
pub const DEFAULT_ZIPF_UNIVERSE: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    Uniform,
    Normal { mean: f64, sd: f64 },
    Zipf { s: f64, universe: u64 },
}

impl Distribution {
    pub fn normal(preset: NormalPreset) -> Self {
        Self::Normal {
            mean: preset.mean(),
            sd: preset.sd(),
        }
    }

    pub fn zipf_default() -> Self {
        Self::Zipf {
            s: DEFAULT_ZIPF_EXPONENT,
            universe: DEFAULT_ZIPF_UNIVERSE,
        }
    }
}

/// A complete, reproducible description of one generated input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub dist: Distribution,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(dist: Distribution, n: usize, seed: u64) -> Self {
        Self { dist, n, seed }
    }

    pub fn validate(&self) -> Result<()> {
        match self.dist {
            Distribution::Normal { sd, .. } if !(sd > 0.0) => {
                Err(Error::InvalidConfig("normal standard deviation must be positive"))
            }
            Distribution::Zipf { s, .. } if !(s > 0.0) => {
                Err(Error::InvalidConfig("zipf exponent must be positive"))
            }
            Distribution::Zipf { universe: 0, .. } => {
                Err(Error::InvalidConfig("zipf universe must hold at least one rank"))
            }
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Vec<Record>> {
        self.validate()?;
        Ok(match self.dist {
            Distribution::Uniform => gen_uniform(self.n, self.seed),
            Distribution::Normal { mean, sd } => gen_normal(self.n, mean, sd, self.seed),
            Distribution::Zipf { s, universe } => gen_zipf(self.n, s, universe, self.seed),
        })
    }
}

fn tagged(keys: impl Iterator<Item = u64>) -> Vec<Record> {
    keys.enumerate()
        .map(|(i, key)| Record::new(key, i as u64))
        .collect()
}

/// Keys uniform over the full 64-bit range.
pub fn gen_uniform(n: usize, seed: u64) -> Vec<Record> {
    let mut rng = rng_for(seed);
    tagged((0..n).map(|_| rng.next_u64()))
}

/// Marsaglia polar method; yields standard normal deviates in pairs.
struct PolarNormal {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl PolarNormal {
    fn new(seed: u64) -> Self {
        Self {
            rng: rng_for(seed),
            spare: None,
        }
    }

    fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.random::<f64>() - 1.0;
            let v = 2.0 * self.rng.random::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = libm::sqrt(-2.0 * libm::log(s) / s);
                self.spare = Some(v * f);
                return u * f;
            }
        }
    }
}

/// Rounds `mean + sd * z` to an integer clamped into the key domain. The
/// offset is added in integer arithmetic so the mean does not swallow its
/// low bits.
fn normal_key(mean: f64, sd: f64, z: f64) -> u64 {
    let base = libm::round(mean);
    let offset = libm::round(sd * z);
    let key = if base.abs() < 1.7e38 && offset.abs() < 1.7e38 {
        base as i128 + offset as i128
    } else {
        (base + offset) as i128
    };
    key.clamp(0, u64::MAX as i128) as u64
}

/// Keys `round(mean + sd * z)` with `z` from the Marsaglia polar method,
/// clamped into `[0, 2^64 - 1]`.
pub fn gen_normal(n: usize, mean: f64, sd: f64, seed: u64) -> Vec<Record> {
    let mut normal = PolarNormal::new(seed);
    tagged((0..n).map(|_| normal_key(mean, sd, normal.sample())))
}

/// Ranks in `[1, universe]` with probability proportional to `rank^-s`,
/// drawn by inverse transform over the cumulative weights.
pub fn gen_zipf(n: usize, s: f64, universe: u64, seed: u64) -> Vec<Record> {
    let mut running = 0.0;
    let cumulative: Vec<f64> = (1..=universe)
        .map(|rank| {
            running += libm::pow(rank as f64, -s);
            running
        })
        .collect();
    let total = running;
    let mut rng = rng_for(seed);
    tagged((0..n).map(|_| {
        let u = rng.random::<f64>() * total;
        let idx = cumulative.partition_point(|&c| c <= u);
        (idx as u64 + 1).min(universe)
    }))
}
