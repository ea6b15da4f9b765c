use std::fmt::Write as _;
use std::time::Instant;

use dfr_core::datagen::GenSpec;
use dfr_core::{oracle_sort, Record, SortStats};

use crate::algo::{run_sort, Algo, DistKind, SortParams};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("input size must be at least 1")]
    EmptyInput,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("{algo} output differs from the oracle on {dist} n={n} seed={seed}:\n{detail}")]
    Mismatch {
        algo: Algo,
        dist: DistKind,
        n: usize,
        seed: u64,
        detail: String,
    },
    #[error(transparent)]
    Sort(#[from] dfr_core::Error),
}

/// One timed, verified trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRow {
    pub algo: Algo,
    pub dist: DistKind,
    pub n: usize,
    pub seed: u64,
    pub trial: u32,
    pub elapsed_ns: u64,
    pub verified: bool,
    pub stats: SortStats,
}

/// Everything needed to regenerate one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputSpec {
    pub dist: DistKind,
    pub n: usize,
    pub seed: u64,
    pub zipf_s: f64,
    pub zipf_universe: u64,
}

impl InputSpec {
    pub fn new(dist: DistKind, n: usize, seed: u64) -> Self {
        Self {
            dist,
            n,
            seed,
            zipf_s: dfr_core::datagen::DEFAULT_ZIPF_EXPONENT,
            zipf_universe: dfr_core::datagen::DEFAULT_ZIPF_UNIVERSE,
        }
    }

    pub fn gen_spec(&self, seed: u64) -> GenSpec {
        GenSpec::new(
            self.dist.distribution(self.zipf_s, self.zipf_universe),
            self.n,
            seed,
        )
    }
}

/// Seed of trial `trial`: each trial sorts a freshly generated input.
pub fn trial_seed(seed: u64, trial: u32) -> u64 {
    seed.wrapping_add(trial as u64)
}

/// Lists up to ten positions where `got` and `want` differ.
fn mismatch_report(got: &[Record], want: &[Record]) -> String {
    let mut out = String::new();
    for (i, (g, w)) in got.iter().zip(want).enumerate().filter(|(_, (g, w))| g != w).take(10) {
        let _ = writeln!(
            out,
            "  [{i}] got (key {:#018x}, tag {}), want (key {:#018x}, tag {})",
            g.key, g.tag, w.key, w.tag
        );
    }
    if got.len() != want.len() {
        let _ = writeln!(out, "  length {} vs {}", got.len(), want.len());
    }
    out
}

fn check(
    algo: Algo,
    input: &InputSpec,
    seed: u64,
    got: &[Record],
    want: &[Record],
) -> Result<(), BenchError> {
    if got == want {
        Ok(())
    } else {
        Err(BenchError::Mismatch {
            algo,
            dist: input.dist,
            n: input.n,
            seed,
            detail: mismatch_report(got, want),
        })
    }
}

/// Runs `trials` timed sorts. The input is generated before the timer
/// starts; scratch allocation happens inside the sort and is timed; the
/// oracle check runs after the timer stops and aborts on any mismatch.
pub fn run_benchmark(
    input: &InputSpec,
    algo: Algo,
    trials: u32,
    params: &SortParams,
) -> Result<Vec<BenchRow>, BenchError> {
    if input.n == 0 {
        return Err(BenchError::EmptyInput);
    }
    if trials == 0 {
        return Err(BenchError::NoTrials);
    }
    let mut rows = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let seed = trial_seed(input.seed, trial);
        let original = input.gen_spec(seed).generate()?;
        let mut records = original.clone();
        let mut stats = SortStats::new();

        let start = Instant::now();
        run_sort(algo, &mut records, params, &mut stats)?;
        let elapsed = start.elapsed();

        check(algo, input, seed, &records, &oracle_sort(&original))?;
        rows.push(BenchRow {
            algo,
            dist: input.dist,
            n: input.n,
            seed,
            trial,
            elapsed_ns: (elapsed.as_nanos() as u64).max(1),
            verified: true,
            stats,
        });
    }
    Ok(rows)
}

/// Sorts one input with `algo` and compares it to the oracle, untimed.
pub fn verify_once(input: &InputSpec, algo: Algo, params: &SortParams) -> Result<SortStats, BenchError> {
    let original = input.gen_spec(input.seed).generate()?;
    let mut records = original.clone();
    let mut stats = SortStats::new();
    run_sort(algo, &mut records, params, &mut stats)?;
    check(algo, input, input.seed, &records, &oracle_sort(&original))?;
    Ok(stats)
}

/// Mean and median of `elapsed_ns` per (algo, n), in first-seen order.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub algo: Algo,
    pub dist: DistKind,
    pub n: usize,
    pub trials: usize,
    pub mean_ns: f64,
    pub median_ns: f64,
}

pub fn summarize(rows: &[BenchRow]) -> Vec<Summary> {
    let mut keys: Vec<(Algo, DistKind, usize)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.algo, r.dist, r.n)) {
            keys.push((r.algo, r.dist, r.n));
        }
    }
    keys.into_iter()
        .map(|(algo, dist, n)| {
            let mut times: Vec<u64> = rows
                .iter()
                .filter(|r| r.algo == algo && r.dist == dist && r.n == n)
                .map(|r| r.elapsed_ns)
                .collect();
            times.sort_unstable();
            let len = times.len();
            let mean_ns = times.iter().map(|&t| t as f64).sum::<f64>() / len as f64;
            let median_ns = if len % 2 == 1 {
                times[len / 2] as f64
            } else {
                (times[len / 2 - 1] + times[len / 2]) as f64 / 2.0
            };
            Summary {
                algo,
                dist,
                n,
                trials: len,
                mean_ns,
                median_ns,
            }
        })
        .collect()
}
