//! Reference sorts: classic LSD radix, diverting MSD radix, insertion sort
//! and the comparison-sort oracle every other sort is checked against.

use alloc::vec::Vec;

use crate::keys::{prefix_sum_exclusive, CountTable, DigitPlan, Record};
use crate::{Error, Result, SortStats};

/// Allocates `n` zeroed records, surfacing allocation failure.
pub(crate) fn alloc_scratch(n: usize) -> Result<Vec<Record>> {
    let mut v = Vec::new();
    v.try_reserve_exact(n)?;
    v.resize(n, Record::default());
    Ok(v)
}

/// Stable insertion sort by key.
pub fn insertion_sort(records: &mut [Record]) {
    for i in 1..records.len() {
        let cur = records[i];
        let mut j = i;
        while j > 0 && records[j - 1].key > cur.key {
            records[j] = records[j - 1];
            j -= 1;
        }
        records[j] = cur;
    }
}

/// Ground truth: the standard library's stable merge sort, keyed on `key`.
pub fn oracle_sort(records: &[Record]) -> Vec<Record> {
    let mut out = records.to_vec();
    out.sort_by_key(|r| r.key);
    out
}

/// Deals `src` into `dst` by digit `pass` using precomputed bucket starts,
/// optionally tallying digit `next` on the way.
fn counted_deal(
    src: &[Record],
    dst: &mut [Record],
    starts: &[usize],
    pass: usize,
    next: Option<(usize, &mut CountTable)>,
    plan: &DigitPlan,
) {
    let mut cursors = starts.to_vec();
    match next {
        Some((next_pass, table)) => {
            for r in src {
                table.bump(plan.digit(r.key, next_pass));
                let d = plan.digit(r.key, pass);
                dst[cursors[d]] = *r;
                cursors[d] += 1;
            }
        }
        None => {
            for r in src {
                let d = plan.digit(r.key, pass);
                dst[cursors[d]] = *r;
                cursors[d] += 1;
            }
        }
    }
}

/// Classic LSD radix sort: one initial counting pass, then every deal pass
/// also counts the following digit.
pub fn lsd_radix_sort(records: &mut [Record], plan: &DigitPlan, stats: &mut SortStats) -> Result<()> {
    let n = records.len();
    let mut scratch = alloc_scratch(n)?;
    let digits = plan.digit_count();

    let mut counts = CountTable::tally(records, 0, plan);
    stats.count_ops += n as u64;
    let mut next = CountTable::zeroed(plan.radix());

    for pass in 0..digits {
        let starts = prefix_sum_exclusive(&counts);
        let tally = if pass + 1 < digits {
            next.clear();
            stats.count_ops += n as u64;
            Some((pass + 1, &mut next))
        } else {
            None
        };
        if pass % 2 == 0 {
            counted_deal(records, &mut scratch, &starts, pass, tally, plan);
        } else {
            counted_deal(&scratch, records, &starts, pass, tally, plan);
        }
        stats.deal_ops += n as u64;
        stats.passes += 1;
        core::mem::swap(&mut counts, &mut next);
    }

    if digits % 2 == 1 {
        records.copy_from_slice(&scratch);
        stats.deal_ops += n as u64;
    }
    Ok(())
}

/// Diverting MSD radix sort. Buckets smaller than `threshold` go to
/// insertion sort; the rest recurse on the next less significant digit.
pub fn msd_radix_sort_diverting(
    records: &mut [Record],
    plan: &DigitPlan,
    threshold: usize,
    stats: &mut SortStats,
) -> Result<()> {
    if threshold == 0 {
        return Err(Error::InvalidConfig("diversion threshold must be at least 1"));
    }
    let mut scratch = alloc_scratch(records.len())?;
    let ctx = MsdContext {
        plan,
        threshold,
    };
    ctx.sort(records, &mut scratch, plan.digit_count() - 1, true, 0, stats);
    Ok(())
}

struct MsdContext<'a> {
    plan: &'a DigitPlan,
    threshold: usize,
}

impl MsdContext<'_> {
    /// Sorts the records in `src` by digits `digit..=0`. The result ends up
    /// in `src` when `land_in_src` is set, otherwise in `dst`.
    fn sort(
        &self,
        src: &mut [Record],
        dst: &mut [Record],
        digit: usize,
        land_in_src: bool,
        depth: usize,
        stats: &mut SortStats,
    ) {
        stats.note_depth(depth);
        let n = src.len();
        if n < self.threshold {
            insertion_sort(src);
            stats.diversion_calls += 1;
            if !land_in_src {
                dst.copy_from_slice(src);
                stats.deal_ops += n as u64;
            }
            return;
        }

        let counts = CountTable::tally(src, digit, self.plan);
        stats.count_ops += n as u64;
        let starts = prefix_sum_exclusive(&counts);
        counted_deal(src, dst, &starts, digit, None, self.plan);
        stats.deal_ops += n as u64;
        if depth == 0 {
            stats.passes += 1;
        }

        if digit == 0 {
            if land_in_src {
                src.copy_from_slice(dst);
                stats.deal_ops += n as u64;
            }
            return;
        }

        for (bucket, &len) in counts.as_slice().iter().enumerate() {
            if len == 0 {
                continue;
            }
            let range = starts[bucket]..starts[bucket] + len;
            self.sort(
                &mut dst[range.clone()],
                &mut src[range],
                digit - 1,
                !land_in_src,
                depth + 1,
                stats,
            );
        }
    }
}
