//! Overflow of estimated buckets under uniform keys.
//!
//! Dealing `n` uniform records into `m` buckets sized `ceil(n / m)` leaves
//! some records without room. [`overflow_fraction`] evaluates the analytical
//! recursion for that fraction exactly as written:
//!
//! ```text
//! g(N, M)    = g(N-1, M) - (1/M) * g(N-1, M, ceil(N/M) - 1),   g(1, M) = 0
//! g(N, M, k) = (N/M - k) * (M/N) * C(N, k) * (1/M)^k * (1 - 1/M)^(N-k)
//! ```
//!
//! [`overflow_fraction_mc`] measures the same quantity by throwing balls
//! into bins, and [`overflow_fraction_enumerated`] computes it exactly for
//! tiny instances by visiting every assignment.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::datagen::rng_for;
use crate::{Error, Result};

pub const MIN_MC_TRIALS: u64 = 10_000;

fn check_domain(n: u64, m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::Domain("bucket count must be at least 2"));
    }
    if n < 1 {
        return Err(Error::Domain("record count must be at least 1"));
    }
    Ok(())
}

fn ln_choose(n: u64, k: u64) -> f64 {
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

/// `g(n, m, k)`, with the binomial and power factors taken in log space.
pub fn overflow_term(n: u64, m: u64, k: u64) -> Result<f64> {
    check_domain(n, m)?;
    if k > n {
        return Err(Error::Domain("occupancy k must not exceed n"));
    }
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let lead = (nf / mf - kf) * (mf / nf);
    if lead == 0.0 {
        return Ok(0.0);
    }
    let ln_prob = ln_choose(n, k) - kf * libm::log(mf) + (nf - kf) * libm::log1p(-1.0 / mf);
    Ok(lead * libm::exp(ln_prob))
}

/// Memoized evaluation of `g(·, m)`.
#[derive(Debug, Clone)]
pub struct OverflowModel {
    m: u64,
    /// `values[i]` is `g(i + 1, m)`.
    values: Vec<f64>,
}

impl OverflowModel {
    pub fn new(m: u64) -> Result<Self> {
        check_domain(1, m)?;
        Ok(Self {
            m,
            values: vec![0.0],
        })
    }

    pub fn fraction(&mut self, n: u64) -> Result<f64> {
        check_domain(n, self.m)?;
        let m = self.m;
        while (self.values.len() as u64) < n {
            let next = self.values.len() as u64 + 1;
            let prev = *self.values.last().expect("base case present");
            let k = next.div_ceil(m) - 1;
            let term = overflow_term(next - 1, m, k)?;
            self.values.push(prev - term / m as f64);
        }
        Ok(self.values[n as usize - 1])
    }

    /// `g(1, m)..=g(n, m)`.
    pub fn sequence(&mut self, n: u64) -> Result<&[f64]> {
        self.fraction(n)?;
        Ok(&self.values[..n as usize])
    }
}

pub fn overflow_fraction(n: u64, m: u64) -> Result<f64> {
    OverflowModel::new(m)?.fraction(n)
}

/// Simulated mean overflow fraction with its 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub half_width: f64,
    pub trials: u64,
}

/// Overflow of one experiment: records beyond `capacity` in each bucket.
fn overflow_of(counts: &[u64], capacity: u64) -> u64 {
    counts.iter().map(|&c| c.saturating_sub(capacity)).sum()
}

pub fn overflow_fraction_mc(n: u64, m: u64, trials: u64, seed: u64) -> Result<McEstimate> {
    check_domain(n, m)?;
    if trials < MIN_MC_TRIALS {
        return Err(Error::Domain("monte carlo needs at least 10^4 trials"));
    }
    let capacity = n.div_ceil(m);
    let mut rng = rng_for(seed);
    let mut counts = vec![0u64; m as usize];
    // Welford accumulation of the per-trial fraction
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for t in 1..=trials {
        counts.iter_mut().for_each(|c| *c = 0);
        for _ in 0..n {
            counts[rng.random_range(0..m) as usize] += 1;
        }
        let x = overflow_of(&counts, capacity) as f64 / n as f64;
        let delta = x - mean;
        mean += delta / t as f64;
        m2 += delta * (x - mean);
    }
    let variance = m2 / (trials - 1) as f64;
    Ok(McEstimate {
        mean,
        half_width: 1.96 * libm::sqrt(variance / trials as f64),
        trials,
    })
}

/// Largest `m^n` visited by [`overflow_fraction_enumerated`].
pub const MAX_ENUMERATED: u64 = 1 << 24;

/// Exact expected overflow fraction by visiting all `m^n` assignments.
pub fn overflow_fraction_enumerated(n: u64, m: u64) -> Result<f64> {
    check_domain(n, m)?;
    let total = (0..n)
        .try_fold(1u64, |acc, _| acc.checked_mul(m).filter(|&v| v <= MAX_ENUMERATED))
        .ok_or(Error::Domain("too many assignments to enumerate"))?;
    let capacity = n.div_ceil(m);
    let mut counts = vec![0u64; m as usize];
    let mut overflow_sum = 0u64;
    for code in 0..total {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut rest = code;
        for _ in 0..n {
            counts[(rest % m) as usize] += 1;
            rest /= m;
        }
        overflow_sum += overflow_of(&counts, capacity);
    }
    Ok(overflow_sum as f64 / total as f64 / n as f64)
}
