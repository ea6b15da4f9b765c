//! Benchmark rows as CSV, one line per trial.

use std::io::{Read, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use dfr_core::SortStats;
use serde::{Deserialize, Serialize};

use crate::bench::BenchRow;

pub const HEADER: &str = "algo,dist,n,seed,trial,elapsed_ns,verified,count_ops,deal_ops,overflow_records,passes,bucket_checks,diversion_calls,max_depth";

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    algo: String,
    dist: String,
    n: usize,
    seed: u64,
    trial: u32,
    elapsed_ns: u64,
    verified: bool,
    count_ops: u64,
    deal_ops: u64,
    overflow_records: u64,
    passes: u64,
    bucket_checks: u64,
    diversion_calls: u64,
    max_depth: u64,
}

impl From<&BenchRow> for CsvRow {
    fn from(r: &BenchRow) -> Self {
        Self {
            algo: r.algo.name().to_owned(),
            dist: r.dist.name().to_owned(),
            n: r.n,
            seed: r.seed,
            trial: r.trial,
            elapsed_ns: r.elapsed_ns,
            verified: r.verified,
            count_ops: r.stats.count_ops,
            deal_ops: r.stats.deal_ops,
            overflow_records: r.stats.overflow_records,
            passes: r.stats.passes,
            bucket_checks: r.stats.bucket_checks,
            diversion_calls: r.stats.diversion_calls,
            max_depth: r.stats.max_recursion_depth,
        }
    }
}

impl TryFrom<CsvRow> for BenchRow {
    type Error = anyhow::Error;

    fn try_from(r: CsvRow) -> Result<Self> {
        Ok(Self {
            algo: r.algo.parse().map_err(|e| anyhow!("{e}"))?,
            dist: r.dist.parse().map_err(|e| anyhow!("{e}"))?,
            n: r.n,
            seed: r.seed,
            trial: r.trial,
            elapsed_ns: r.elapsed_ns,
            verified: r.verified,
            stats: SortStats {
                count_ops: r.count_ops,
                deal_ops: r.deal_ops,
                overflow_records: r.overflow_records,
                passes: r.passes,
                bucket_checks: r.bucket_checks,
                diversion_calls: r.diversion_calls,
                max_recursion_depth: r.max_depth,
            },
        })
    }
}

/// Writes `rows` ordered by (n, trial); ties keep their given order.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    if rows.is_empty() {
        bail!("no rows to write");
    }
    let mut ordered: Vec<&BenchRow> = rows.iter().collect();
    ordered.sort_by_key(|r| (r.n, r.trial));
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for row in ordered {
        writer.serialize(CsvRow::from(row))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[BenchRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    write_csv(rows, std::io::BufWriter::new(file))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != HEADER {
        bail!("unexpected header: {header}");
    }
    reader
        .deserialize::<CsvRow>()
        .map(|row| BenchRow::try_from(row?))
        .collect()
}

pub fn load_csv(path: &Path) -> Result<Vec<BenchRow>> {
    let file = std::fs::File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    read_csv(file)
}
