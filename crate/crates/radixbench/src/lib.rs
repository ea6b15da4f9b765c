//! Timing, verification and reporting around the `dfr-core` sorts.
//!
//! The `radixbench` binary wraps these modules; they are exposed as a
//! library so the harness itself can be tested.

pub mod algo;
pub mod bench;
pub mod csv_io;
pub mod model;
pub mod plot;

pub use algo::{Algo, DistKind, SortParams};
pub use bench::{run_benchmark, verify_once, BenchError, BenchRow};
