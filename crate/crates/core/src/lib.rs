//! Stable radix sorts over 64-bit keys.
//!
//! The centrepiece is [`dfr::dfr_sort`], a diverting LSD radix sort: it runs
//! the estimating [`fastradix`] engine over just enough of the most
//! significant digits that the remaining buckets are small, then finishes
//! runs of small buckets with one insertion sort each and recurses on any
//! bucket that is still large.
//!
//! Baselines live in [`baselines`] (classic LSD, diverting MSD, insertion
//! sort and a comparison-sort oracle). [`overflow_model`] evaluates the
//! analytical overflow recursion for estimated buckets and checks it against
//! a balls-into-bins simulation, and [`datagen`] produces the seeded inputs
//! used by the benchmarks.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod baselines;
pub mod datagen;
pub mod dfr;
mod error;
pub mod fastradix;
pub mod keys;
pub mod overflow_model;
mod prefetch;
pub mod stats;

pub use baselines::{insertion_sort, lsd_radix_sort, msd_radix_sort_diverting, oracle_sort};
pub use dfr::{dfr_sort, estimate_top_passes, DfrConfig};
pub use error::{Error, Result};
pub use fastradix::{fast_radix_sort, FastRadixConfig};
pub use keys::{extract_digit, prefix_sum_exclusive, CountTable, DigitPlan, Record};
pub use stats::SortStats;
