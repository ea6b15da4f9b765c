/// Instrumentation counters filled in by every sort.
///
/// `passes` counts digit passes made over the whole input by the outermost
/// call; passes inside recursive calls over sub-buckets are not included.
/// Copies that move a finished result back into the caller's buffer count as
/// deals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SortStats {
    pub count_ops: u64,
    pub deal_ops: u64,
    pub overflow_records: u64,
    pub passes: u64,
    pub bucket_checks: u64,
    pub diversion_calls: u64,
    pub max_recursion_depth: u64,
}

impl SortStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn note_depth(&mut self, depth: usize) {
        self.max_recursion_depth = self.max_recursion_depth.max(depth as u64);
    }
}
