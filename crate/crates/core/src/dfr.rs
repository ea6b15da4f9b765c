//! Diverting Fast Radix.
//!
//! The driver estimates how many of the most significant digits must be
//! sorted before buckets drop to the diversion threshold, sorts just those
//! digits with the Fast Radix engine, then scans the result left to right.
//! Runs of consecutive small buckets are finished together by one insertion
//! sort (their relative order is already fixed); each large bucket is sorted
//! recursively over the remaining, less significant digits. Recursion shares
//! the top-level scratch buffer and overflow arena.

use crate::baselines::{alloc_scratch, insertion_sort};
use crate::fastradix::{sort_digit_group, FastRadixConfig, OverflowArena};
use crate::keys::{DigitPlan, Record};
use crate::{Error, Result, SortStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DfrConfig {
    /// Buckets of at most this many records are diverted to insertion sort.
    pub diversion_threshold: usize,
    pub fast: FastRadixConfig,
    /// Replaces the estimated number of top passes for the outermost call.
    pub top_passes: Option<usize>,
}

impl DfrConfig {
    pub fn new(plan: DigitPlan) -> Self {
        Self {
            diversion_threshold: 64,
            fast: FastRadixConfig::new(plan),
            top_passes: None,
        }
    }

    pub fn with_threshold(mut self, threshold: usize) -> Self {
        self.diversion_threshold = threshold;
        self
    }

    pub fn plan(&self) -> DigitPlan {
        self.fast.plan
    }

    pub fn validate(&self) -> Result<()> {
        if self.diversion_threshold < 2 {
            return Err(Error::InvalidConfig("diversion threshold must be at least 2"));
        }
        self.fast.validate()
    }
}

impl Default for DfrConfig {
    fn default() -> Self {
        Self::new(DigitPlan::default())
    }
}

/// Least `p` with `n / m^p <= n_d`, i.e. `max(0, ceil(log_m(n / n_d)))`,
/// computed in integers.
pub fn estimate_top_passes(n: usize, m: usize, n_d: usize) -> usize {
    debug_assert!(m >= 2 && n_d >= 1);
    let mut passes = 0;
    let mut reach = n_d;
    while n > reach {
        passes += 1;
        reach = reach.saturating_mul(m);
    }
    passes
}

/// What one diversion scan did.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    /// Maximal runs of small buckets finished by one insertion sort each.
    pub small_runs: usize,
    /// Large buckets sorted recursively.
    pub recursions: usize,
}

struct Driver<'a> {
    config: &'a DfrConfig,
    arena: OverflowArena,
}

impl Driver<'_> {
    /// Sorts `a` (digits `remaining - 1..=0` still unsorted) with scratch `b`.
    fn sort(
        &mut self,
        a: &mut [Record],
        b: &mut [Record],
        remaining: usize,
        depth: usize,
        stats: &mut SortStats,
    ) -> Result<()> {
        stats.note_depth(depth);
        let n = a.len();
        if remaining == 0 {
            return Ok(());
        }
        if n <= self.config.diversion_threshold {
            insertion_sort(a);
            stats.diversion_calls += 1;
            return Ok(());
        }

        let plan = self.config.plan();
        let estimated = estimate_top_passes(n, plan.radix(), self.config.diversion_threshold);
        let passes = match (depth, self.config.top_passes) {
            (0, Some(p)) => p,
            _ => estimated,
        }
        .clamp(1, remaining);
        let lo = remaining - passes;

        sort_digit_group(a, b, lo, passes, &self.config.fast, &mut self.arena, stats)?;
        if depth == 0 {
            stats.passes += passes as u64;
        }
        if lo == 0 {
            return Ok(());
        }
        self.scan(a, b, lo, depth, stats).map(|_| ())
    }

    /// Walks groups of equal digits `lo..` and diverts or recurses.
    fn scan(
        &mut self,
        a: &mut [Record],
        b: &mut [Record],
        lo: usize,
        depth: usize,
        stats: &mut SortStats,
    ) -> Result<ScanSummary> {
        let plan = self.config.plan();
        let threshold = self.config.diversion_threshold;
        let n = a.len();
        let mut summary = ScanSummary::default();
        let mut run_start = 0;
        let mut i = 0;
        while i < n {
            let prefix = plan.prefix(a[i].key, lo);
            let mut j = i + 1;
            while j < n && plan.prefix(a[j].key, lo) == prefix {
                j += 1;
            }
            if j - i > threshold {
                if run_start < i {
                    insertion_sort(&mut a[run_start..i]);
                    stats.diversion_calls += 1;
                    summary.small_runs += 1;
                }
                self.sort(&mut a[i..j], &mut b[i..j], lo, depth + 1, stats)?;
                summary.recursions += 1;
                run_start = j;
            }
            i = j;
        }
        if run_start < n {
            insertion_sort(&mut a[run_start..]);
            stats.diversion_calls += 1;
            summary.small_runs += 1;
        }
        Ok(summary)
    }
}

/// Stable Diverting Fast Radix sort.
pub fn dfr_sort(records: &mut [Record], config: &DfrConfig, stats: &mut SortStats) -> Result<()> {
    config.validate()?;
    let n = records.len();
    if n == 0 {
        return Ok(());
    }
    if n <= config.diversion_threshold {
        insertion_sort(records);
        stats.diversion_calls += 1;
        return Ok(());
    }
    let mut scratch = alloc_scratch(n)?;
    let mut driver = Driver {
        config,
        arena: OverflowArena::for_input(n, &config.fast)?,
    };
    driver.sort(records, &mut scratch, config.plan().digit_count(), 0, stats)
}

/// Finishes a buffer already grouped by its digits `remaining_digits..`:
/// small groups are diverted in bulk, large ones recurse over the
/// `remaining_digits` lower digits.
pub fn scan_and_divert(
    buffer: &mut [Record],
    config: &DfrConfig,
    remaining_digits: usize,
    stats: &mut SortStats,
) -> Result<ScanSummary> {
    config.validate()?;
    if buffer.is_empty() {
        return Ok(ScanSummary::default());
    }
    let mut scratch = alloc_scratch(buffer.len())?;
    let mut driver = Driver {
        config,
        arena: OverflowArena::for_input(buffer.len(), &config.fast)?,
    };
    driver.scan(buffer, &mut scratch, remaining_digits, 0, stats)
}
