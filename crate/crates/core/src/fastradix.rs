//! The Fast Radix engine.
//!
//! Every pass but the last deals into buckets whose sizes are *estimated*
//! as an even split of the input instead of counted. Records that find their
//! bucket full are staged per digit in small "ladles" and block-copied into a
//! spill buffer; once the spill buffer is full, further blocks go into the
//! already consumed prefix of the pass's source buffer. Between passes the
//! staged overflow is dealt into per-digit overflow buckets that virtually
//! extend the main buckets, so the next pass can read records in stable
//! bucket order. The penultimate pass also counts the final digit, which
//! lets the last pass place every record exactly.
//!
//! Per-record capacity checks are amortized: with every bucket holding at
//! least `b` free slots, `b` records can be dealt before the buckets need to
//! be re-examined. Once the smallest free space drops below the configured
//! cutoff the deal falls back to checking each record.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::baselines::alloc_scratch;
use crate::keys::{prefix_sum_exclusive, CountTable, DigitPlan, Record};
use crate::prefetch::prefetch_write;
use crate::{Error, Result, SortStats};

/// Upper bound on the total number of records held by all ladles together.
const LADLE_TABLE_LIMIT: usize = 1 << 16;

/// Records between the write cursor and the prefetched slot (one 64-byte line).
const PREFETCH_AHEAD: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FastRadixConfig {
    pub plan: DigitPlan,
    /// Ladle length in records.
    pub block_size: usize,
    /// Smallest round budget still dealt without per-record checks.
    pub budget_cutoff: usize,
    pub write_hints: bool,
}

impl FastRadixConfig {
    pub fn new(plan: DigitPlan) -> Self {
        Self {
            plan,
            block_size: 64,
            budget_cutoff: 2 * plan.radix(),
            write_hints: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size == 0 {
            return Err(Error::InvalidConfig("ladle block size must be at least 1"));
        }
        if self.budget_cutoff < self.plan.radix() {
            return Err(Error::InvalidConfig("budget cutoff must be at least the radix"));
        }
        Ok(())
    }
}

impl Default for FastRadixConfig {
    fn default() -> Self {
        Self::new(DigitPlan::default())
    }
}

/// Start, cursor and end of every bucket of one pass. Indices are absolute
/// positions in the destination buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketLayout {
    starts: Vec<usize>,
    cursors: Vec<usize>,
    ends: Vec<usize>,
}

impl BucketLayout {
    /// Exact layout from counted bucket sizes.
    pub fn from_counts(counts: &CountTable, region_start: usize) -> Self {
        let starts: Vec<usize> = prefix_sum_exclusive(counts)
            .into_iter()
            .map(|s| s + region_start)
            .collect();
        let ends = starts
            .iter()
            .zip(counts.as_slice())
            .map(|(s, c)| s + c)
            .collect();
        Self {
            cursors: starts.clone(),
            starts,
            ends,
        }
    }

    pub fn radix(&self) -> usize {
        self.starts.len()
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn cursors(&self) -> &[usize] {
        &self.cursors
    }

    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    pub fn capacity(&self, bucket: usize) -> usize {
        self.ends[bucket] - self.starts[bucket]
    }

    pub fn remaining(&self, bucket: usize) -> usize {
        self.ends[bucket] - self.cursors[bucket]
    }

    pub fn filled(&self, bucket: usize) -> Range<usize> {
        self.starts[bucket]..self.cursors[bucket]
    }

    fn min_remaining(&self) -> usize {
        self.cursors
            .iter()
            .zip(&self.ends)
            .map(|(c, e)| e - c)
            .min()
            .unwrap_or(0)
    }
}

/// Estimated layout for `n` records over `m` buckets: the split is as even
/// as possible, so every capacity is `n / m` or one more, never above
/// `ceil(n / m)`.
pub fn estimate_buckets(n: usize, m: usize, region_start: usize) -> BucketLayout {
    let (base, extra) = (n / m, n % m);
    let counts = (0..m).map(|i| base + usize::from(i < extra)).collect();
    BucketLayout::from_counts(&CountTable::from_counts(counts), region_start)
}

/// Overflow records of one pass, grouped stably by digit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverflowBuckets {
    records: Vec<Record>,
    starts: Vec<usize>,
    lens: Vec<usize>,
}

impl OverflowBuckets {
    pub fn bucket(&self, digit: usize) -> &[Record] {
        match self.starts.get(digit) {
            Some(&s) => &self.records[s..s + self.lens[digit]],
            None => &[],
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn clear(&mut self) {
        self.records.clear();
        self.starts.clear();
        self.lens.clear();
    }
}

/// Spill buffer, per-digit overflow counts and per-digit ladles.
#[derive(Debug, Clone)]
pub struct OverflowArena {
    spill: Vec<Record>,
    spill_cap: usize,
    per_digit_overflow: CountTable,
    ladles: Vec<Record>,
    ladle_fill: Vec<usize>,
    block: usize,
    /// Records written into the consumed prefix of the source this pass.
    excess: usize,
}

impl OverflowArena {
    /// Arena with the default initial spill capacity for `n` records,
    /// `max(4 * radix, n / 64)`.
    pub fn for_input(n: usize, config: &FastRadixConfig) -> Result<Self> {
        let radix = config.plan.radix();
        Self::with_spill_capacity(radix, config.block_size, (4 * radix).max(n / 64))
    }

    pub fn with_spill_capacity(radix: usize, block_size: usize, spill_cap: usize) -> Result<Self> {
        let block = block_size.min((LADLE_TABLE_LIMIT / radix).max(1)).max(1);
        let mut spill = Vec::new();
        spill.try_reserve_exact(spill_cap)?;
        Ok(Self {
            spill,
            spill_cap,
            per_digit_overflow: CountTable::zeroed(radix),
            ladles: alloc_scratch(radix * block)?,
            ladle_fill: vec![0; radix],
            block,
            excess: 0,
        })
    }

    pub fn spill_capacity(&self) -> usize {
        self.spill_cap
    }

    pub fn spill(&self) -> &[Record] {
        &self.spill
    }

    pub fn per_digit_overflow(&self) -> &CountTable {
        &self.per_digit_overflow
    }

    /// Effective ladle length; capped so all ladles together stay small.
    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn ladle_fill(&self, digit: usize) -> usize {
        self.ladle_fill[digit]
    }

    fn reset_pass(&mut self) {
        self.spill.clear();
        self.per_digit_overflow.clear();
        self.ladle_fill.iter_mut().for_each(|f| *f = 0);
        self.excess = 0;
    }

    #[inline]
    fn stage(&mut self, r: Record, digit: usize, src: &mut [Record], free: usize) {
        self.ladles[digit * self.block + self.ladle_fill[digit]] = r;
        self.ladle_fill[digit] += 1;
        self.per_digit_overflow.bump(digit);
        if self.ladle_fill[digit] == self.block {
            self.flush(digit, src, free);
        }
    }

    /// Copies ladle `digit` as one block into spill, continuing into
    /// `src[..free]` once spill is full.
    fn flush(&mut self, digit: usize, src: &mut [Record], free: usize) {
        let fill = self.ladle_fill[digit];
        let base = digit * self.block;
        let take = (self.spill_cap - self.spill.len()).min(fill);
        self.spill
            .extend_from_slice(&self.ladles[base..base + take]);
        let rest = fill - take;
        if rest > 0 {
            assert!(
                self.excess + rest <= free,
                "overflow excess would overwrite unread source records"
            );
            src[self.excess..self.excess + rest]
                .copy_from_slice(&self.ladles[base + take..base + fill]);
            self.excess += rest;
        }
        self.ladle_fill[digit] = 0;
    }

    fn flush_all(&mut self, src: &mut [Record], free: usize) {
        for digit in 0..self.ladle_fill.len() {
            if self.ladle_fill[digit] > 0 {
                self.flush(digit, src, free);
            }
        }
    }

    fn provision(&mut self, capacity: usize) -> Result<()> {
        let mut spill = Vec::new();
        spill.try_reserve_exact(capacity)?;
        self.spill = spill;
        self.spill_cap = capacity;
        Ok(())
    }
}

/// Where a pass reads its records from.
#[derive(Debug, Clone, Copy)]
pub enum SourceOrder<'a> {
    /// The whole source buffer, left to right.
    Flat,
    /// Bucket by bucket: the filled part of each main bucket of the previous
    /// pass, then that bucket's overflow extension.
    Bucketed {
        layout: &'a BucketLayout,
        extension: &'a OverflowBuckets,
    },
}

/// Result of one estimated deal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DealOutcome {
    /// Overflow records that did not fit in spill and were written to
    /// `src[..excess]`, in arrival order after the spilled ones.
    pub excess: usize,
    pub overflow: usize,
}

#[derive(Clone, Copy)]
enum Mode {
    Budget(usize),
    Checked,
}

struct Dealer<'a> {
    dst: &'a mut [Record],
    layout: &'a mut BucketLayout,
    arena: &'a mut OverflowArena,
    next: Option<(usize, &'a mut CountTable)>,
    plan: DigitPlan,
    digit: usize,
    cutoff: usize,
    hints: bool,
    mode: Mode,
    stats: &'a mut SortStats,
}

impl Dealer<'_> {
    fn refresh(&mut self) {
        self.stats.bucket_checks += self.layout.radix() as u64;
        let budget = self.layout.min_remaining();
        self.mode = if budget >= self.cutoff {
            Mode::Budget(budget)
        } else {
            Mode::Checked
        };
    }

    #[inline(always)]
    fn tally(&mut self, r: &Record) {
        if let Some((next_digit, table)) = &mut self.next {
            table.bump(self.plan.digit(r.key, *next_digit));
        }
    }

    #[inline(always)]
    fn place(&mut self, r: Record, d: usize) {
        let slot = self.layout.cursors[d];
        if self.hints {
            prefetch_write(self.dst.as_ptr().wrapping_add(slot + PREFETCH_AHEAD));
        }
        self.dst[slot] = r;
        self.layout.cursors[d] = slot + 1;
    }

    #[inline]
    fn checked(&mut self, r: Record, src: &mut [Record], free: usize) {
        self.tally(&r);
        let d = self.plan.digit(r.key, self.digit);
        self.stats.bucket_checks += 1;
        self.stats.deal_ops += 1;
        if self.layout.cursors[d] < self.layout.ends[d] {
            self.place(r, d);
        } else {
            self.stats.overflow_records += 1;
            self.stats.count_ops += 1;
            self.arena.stage(r, d, src, free);
        }
    }

    fn unchecked_run(&mut self, run: &[Record]) {
        for r in run {
            self.tally(r);
            let d = self.plan.digit(r.key, self.digit);
            self.place(*r, d);
        }
        self.stats.deal_ops += run.len() as u64;
    }

    /// Deals `src[range]`. Everything before the record being dealt is
    /// free for overflow excess.
    fn feed_main(&mut self, src: &mut [Record], range: Range<usize>) {
        let mut p = range.start;
        while p < range.end {
            match self.mode {
                Mode::Budget(left) => {
                    let take = left.min(range.end - p);
                    self.unchecked_run(&src[p..p + take]);
                    p += take;
                    if left == take {
                        self.refresh();
                    } else {
                        self.mode = Mode::Budget(left - take);
                    }
                }
                Mode::Checked => {
                    while p < range.end {
                        let r = src[p];
                        p += 1;
                        self.checked(r, src, p);
                    }
                }
            }
        }
    }

    /// Deals an overflow extension; `free` bounds the consumed source prefix.
    fn feed_extension(&mut self, src: &mut [Record], run: &[Record], free: usize) {
        let mut p = 0;
        while p < run.len() {
            match self.mode {
                Mode::Budget(left) => {
                    let take = left.min(run.len() - p);
                    self.unchecked_run(&run[p..p + take]);
                    p += take;
                    if left == take {
                        self.refresh();
                    } else {
                        self.mode = Mode::Budget(left - take);
                    }
                }
                Mode::Checked => {
                    for &r in &run[p..] {
                        self.checked(r, src, free);
                    }
                    p = run.len();
                }
            }
        }
    }
}

/// Deals one estimated pass from `src` (read in `order`) into `dst` by
/// `digit`, using budgeted rounds and falling back to checked dealing.
///
/// Records that do not fit are staged in the arena's ladles; all ladles are
/// flushed before returning. When `next` is given, the named digit of every
/// record is tallied into its table.
#[allow(clippy::too_many_arguments)]
pub fn budgeted_deal(
    src: &mut [Record],
    order: SourceOrder<'_>,
    dst: &mut [Record],
    layout: &mut BucketLayout,
    arena: &mut OverflowArena,
    next: Option<(usize, &mut CountTable)>,
    digit: usize,
    config: &FastRadixConfig,
    stats: &mut SortStats,
) -> DealOutcome {
    arena.reset_pass();
    let tallies = next.is_some();
    let deals_before = stats.deal_ops;
    let mut dealer = Dealer {
        dst,
        layout,
        arena,
        next,
        plan: config.plan,
        digit,
        cutoff: config.budget_cutoff,
        hints: config.write_hints,
        mode: Mode::Checked,
        stats,
    };
    dealer.refresh();

    match order {
        SourceOrder::Flat => {
            let n = src.len();
            dealer.feed_main(src, 0..n);
        }
        SourceOrder::Bucketed { layout: prev, extension } => {
            for bucket in 0..prev.radix() {
                dealer.feed_main(src, prev.filled(bucket));
                let ext = extension.bucket(bucket);
                if !ext.is_empty() {
                    dealer.feed_extension(src, ext, prev.ends[bucket]);
                }
            }
        }
    }

    if tallies {
        stats.count_ops += stats.deal_ops - deals_before;
    }
    let free = src.len();
    arena.flush_all(src, free);
    DealOutcome {
        excess: arena.excess,
        overflow: arena.per_digit_overflow.total(),
    }
}

/// Deals the overflow staged during a pass (spill, then `excess`) into
/// per-digit overflow buckets, reusing `reuse`'s storage.
///
/// If more overflow was found than the spill buffer holds, a new spill
/// buffer twice the size of the overflow found is provisioned for the
/// following passes.
pub fn process_overflow(
    arena: &mut OverflowArena,
    excess: &[Record],
    digit: usize,
    plan: &DigitPlan,
    mut reuse: OverflowBuckets,
    stats: &mut SortStats,
) -> Result<OverflowBuckets> {
    reuse.clear();
    let found = arena.per_digit_overflow.total();
    debug_assert_eq!(found, arena.spill.len() + excess.len());
    if found == 0 {
        return Ok(reuse);
    }

    let starts = prefix_sum_exclusive(&arena.per_digit_overflow);
    reuse.records.try_reserve_exact(found)?;
    reuse.records.resize(found, Record::default());
    let mut cursors = starts.clone();
    for r in arena.spill.iter().chain(excess) {
        let d = plan.digit(r.key, digit);
        reuse.records[cursors[d]] = *r;
        cursors[d] += 1;
    }
    stats.deal_ops += found as u64;
    reuse.starts = starts;
    reuse.lens = arena.per_digit_overflow.as_slice().to_vec();

    if found > arena.spill_cap {
        arena.provision(2 * found)?;
    }
    arena.reset_pass();
    Ok(reuse)
}

/// Records of a finished pass in stable bucket order.
pub fn read_in_bucket_order<'a>(
    main: &'a [Record],
    layout: &'a BucketLayout,
    extension: &'a OverflowBuckets,
) -> impl Iterator<Item = &'a Record> + 'a {
    (0..layout.radix())
        .flat_map(move |b| main[layout.filled(b)].iter().chain(extension.bucket(b)))
}

/// Deals into exact buckets; every slot is known in advance.
fn exact_deal<'a>(
    records: impl Iterator<Item = &'a Record>,
    dst: &mut [Record],
    layout: &mut BucketLayout,
    digit: usize,
    config: &FastRadixConfig,
    stats: &mut SortStats,
) {
    let plan = config.plan;
    let mut dealt = 0u64;
    for r in records {
        let d = plan.digit(r.key, digit);
        let slot = layout.cursors[d];
        if config.write_hints {
            prefetch_write(dst.as_ptr().wrapping_add(slot + PREFETCH_AHEAD));
        }
        dst[slot] = *r;
        layout.cursors[d] = slot + 1;
        dealt += 1;
    }
    stats.deal_ops += dealt;
}

/// Sorts `a` by digits `lo..lo + digits` (a contiguous group, least
/// significant first) using `b` as scratch of the same length. The result
/// lands in `a`.
pub(crate) fn sort_digit_group(
    a: &mut [Record],
    b: &mut [Record],
    lo: usize,
    digits: usize,
    config: &FastRadixConfig,
    arena: &mut OverflowArena,
    stats: &mut SortStats,
) -> Result<()> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n == 0 || digits == 0 {
        return Ok(());
    }
    let plan = config.plan;
    let radix = plan.radix();
    let top = lo + digits - 1;

    if digits == 1 {
        let counts = CountTable::tally(a, top, &plan);
        stats.count_ops += n as u64;
        let mut layout = BucketLayout::from_counts(&counts, 0);
        exact_deal(a.iter(), b, &mut layout, top, config, stats);
        a.copy_from_slice(b);
        stats.deal_ops += n as u64;
        return Ok(());
    }

    let mut top_counts = CountTable::zeroed(radix);
    let mut extension = OverflowBuckets::default();
    let mut prev: Option<BucketLayout> = None;

    for pass in 0..digits - 1 {
        let digit = lo + pass;
        let (src, dst) = if pass % 2 == 0 {
            (&mut *a, &mut *b)
        } else {
            (&mut *b, &mut *a)
        };
        let mut layout = estimate_buckets(n, radix, 0);
        let order = match &prev {
            None => SourceOrder::Flat,
            Some(l) => SourceOrder::Bucketed {
                layout: l,
                extension: &extension,
            },
        };
        let next = (pass == digits - 2).then_some((top, &mut top_counts));
        let outcome = budgeted_deal(src, order, dst, &mut layout, arena, next, digit, config, stats);
        let reuse = core::mem::take(&mut extension);
        extension = process_overflow(arena, &src[..outcome.excess], digit, &plan, reuse, stats)?;
        prev = Some(layout);
    }

    let prev = prev.expect("at least one estimated pass");
    let mut layout = BucketLayout::from_counts(&top_counts, 0);
    let last = digits - 1;
    if last % 2 == 0 {
        exact_deal(read_in_bucket_order(a, &prev, &extension), b, &mut layout, top, config, stats);
        a.copy_from_slice(b);
        stats.deal_ops += n as u64;
    } else {
        exact_deal(read_in_bucket_order(b, &prev, &extension), a, &mut layout, top, config, stats);
    }
    Ok(())
}

/// Stable Fast Radix sort of `records` over all digits of the plan.
pub fn fast_radix_sort(
    records: &mut [Record],
    config: &FastRadixConfig,
    stats: &mut SortStats,
) -> Result<()> {
    config.validate()?;
    let n = records.len();
    if n == 0 {
        return Ok(());
    }
    let mut scratch = alloc_scratch(n)?;
    let mut arena = OverflowArena::for_input(n, config)?;
    let digits = config.plan.digit_count();
    stats.passes += digits as u64;
    sort_digit_group(records, &mut scratch, 0, digits, config, &mut arena, stats)
}
