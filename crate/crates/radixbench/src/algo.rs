use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use dfr_core::datagen::{Distribution, NormalPreset};
use dfr_core::{
    dfr_sort, fast_radix_sort, lsd_radix_sort, msd_radix_sort_diverting, oracle_sort, DfrConfig,
    DigitPlan, FastRadixConfig, Record, SortStats,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum)]
pub enum Algo {
    Lsd,
    Msd,
    Fast,
    Dfr,
    Oracle,
}

impl Algo {
    pub const RADIX: [Algo; 4] = [Algo::Lsd, Algo::Msd, Algo::Fast, Algo::Dfr];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Lsd => "lsd",
            Algo::Msd => "msd",
            Algo::Fast => "fast",
            Algo::Dfr => "dfr",
            Algo::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Algo as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum DistKind {
    Uniform,
    NormalWide,
    NormalNarrow,
    Zipf,
}

impl DistKind {
    pub const ALL: [DistKind; 4] = [
        DistKind::Uniform,
        DistKind::NormalWide,
        DistKind::NormalNarrow,
        DistKind::Zipf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistKind::Uniform => "uniform",
            DistKind::NormalWide => "normal-wide",
            DistKind::NormalNarrow => "normal-narrow",
            DistKind::Zipf => "zipf",
        }
    }

    pub fn distribution(self, zipf_s: f64, zipf_universe: u64) -> Distribution {
        match self {
            DistKind::Uniform => Distribution::Uniform,
            DistKind::NormalWide => Distribution::normal(NormalPreset::Wide),
            DistKind::NormalNarrow => Distribution::normal(NormalPreset::Narrow),
            DistKind::Zipf => Distribution::Zipf {
                s: zipf_s,
                universe: zipf_universe,
            },
        }
    }
}

impl fmt::Display for DistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for DistKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <DistKind as ValueEnum>::from_str(s, false)
    }
}

/// Tuning shared by every sort in one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SortParams {
    pub plan: DigitPlan,
    /// Diversion threshold for both MSD and DFR.
    pub threshold: usize,
    pub block_size: usize,
    pub write_hints: bool,
}

impl SortParams {
    pub fn new(radix_bits: u32, threshold: usize) -> dfr_core::Result<Self> {
        Ok(Self {
            plan: DigitPlan::new(64, radix_bits)?,
            threshold,
            block_size: 64,
            write_hints: false,
        })
    }

    pub fn fast_config(&self) -> FastRadixConfig {
        let mut config = FastRadixConfig::new(self.plan);
        config.block_size = self.block_size;
        config.write_hints = self.write_hints;
        config
    }

    pub fn dfr_config(&self) -> DfrConfig {
        DfrConfig {
            diversion_threshold: self.threshold,
            fast: self.fast_config(),
            top_passes: None,
        }
    }
}

impl Default for SortParams {
    fn default() -> Self {
        Self::new(8, 64).expect("default radix is valid")
    }
}

/// Sorts `records` in place with `algo`; all scratch space is allocated
/// inside this call.
pub fn run_sort(
    algo: Algo,
    records: &mut [Record],
    params: &SortParams,
    stats: &mut SortStats,
) -> dfr_core::Result<()> {
    match algo {
        Algo::Lsd => lsd_radix_sort(records, &params.plan, stats),
        Algo::Msd => msd_radix_sort_diverting(records, &params.plan, params.threshold, stats),
        Algo::Fast => fast_radix_sort(records, &params.fast_config(), stats),
        Algo::Dfr => dfr_sort(records, &params.dfr_config(), stats),
        Algo::Oracle => {
            let sorted = oracle_sort(records);
            records.copy_from_slice(&sorted);
            Ok(())
        }
    }
}
