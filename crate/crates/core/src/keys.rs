//! Records, digit plans and the counting primitives shared by every sort.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A sort key with a provenance tag.
///
/// The tag is the record's position in the generated input and rides along
/// as the payload, which is what makes stability observable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Record {
    pub key: u64,
    pub tag: u64,
}

impl Record {
    #[inline]
    pub const fn new(key: u64, tag: u64) -> Self {
        Self { key, tag }
    }
}

pub const KEY_BITS: u32 = 64;
const ALLOWED_RADIX_BITS: [u32; 3] = [4, 8, 16];

/// How a key is cut into digits. Digit 0 is the least significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DigitPlan {
    radix_bits: u32,
    key_bits: u32,
    digit_count: usize,
    radix: usize,
}

impl DigitPlan {
    pub fn new(key_bits: u32, radix_bits: u32) -> Result<Self> {
        if key_bits != KEY_BITS
            || !ALLOWED_RADIX_BITS.contains(&radix_bits)
            || key_bits % radix_bits != 0
        {
            return Err(Error::InvalidRadix {
                key_bits,
                radix_bits,
            });
        }
        Ok(Self {
            radix_bits,
            key_bits,
            digit_count: (key_bits / radix_bits) as usize,
            radix: 1 << radix_bits,
        })
    }

    pub fn radix_bits(&self) -> u32 {
        self.radix_bits
    }

    pub fn key_bits(&self) -> u32 {
        self.key_bits
    }

    pub fn digit_count(&self) -> usize {
        self.digit_count
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    /// Digit `pass` of `key` without range checking `pass`.
    #[inline(always)]
    pub(crate) fn digit(&self, key: u64, pass: usize) -> usize {
        ((key >> (pass as u32 * self.radix_bits)) as usize) & (self.radix - 1)
    }

    /// The key with every digit below `pass` removed; records sharing a
    /// prefix agree on digits `pass..digit_count`.
    #[inline(always)]
    pub(crate) fn prefix(&self, key: u64, pass: usize) -> u64 {
        let shift = pass as u32 * self.radix_bits;
        if shift >= KEY_BITS {
            0
        } else {
            key >> shift
        }
    }
}

impl Default for DigitPlan {
    fn default() -> Self {
        Self::new(KEY_BITS, 8).expect("8-bit radix is always valid")
    }
}

pub fn make_digit_plan(key_bits: u32, radix_bits: u32) -> Result<DigitPlan> {
    DigitPlan::new(key_bits, radix_bits)
}

pub fn extract_digit(key: u64, pass_index: usize, plan: &DigitPlan) -> Result<usize> {
    if pass_index >= plan.digit_count {
        return Err(Error::PassOutOfRange {
            pass: pass_index,
            digit_count: plan.digit_count,
        });
    }
    Ok(plan.digit(key, pass_index))
}

/// Occurrences of each digit value in one counting pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable(Vec<usize>);

impl CountTable {
    pub fn zeroed(radix: usize) -> Self {
        Self(vec![0; radix])
    }

    pub fn from_counts(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    /// Counts digit `pass` over `records`.
    pub fn tally(records: &[Record], pass: usize, plan: &DigitPlan) -> Self {
        let mut table = Self::zeroed(plan.radix());
        for r in records {
            table.0[plan.digit(r.key, pass)] += 1;
        }
        table
    }

    #[inline(always)]
    pub(crate) fn bump(&mut self, digit: usize) {
        self.0[digit] += 1;
    }

    pub fn clear(&mut self) {
        self.0.iter_mut().for_each(|c| *c = 0);
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl core::ops::Index<usize> for CountTable {
    type Output = usize;

    fn index(&self, digit: usize) -> &usize {
        &self.0[digit]
    }
}

/// Converts counts into the start index of each bucket.
pub fn prefix_sum_exclusive(counts: &CountTable) -> Vec<usize> {
    counts
        .0
        .iter()
        .scan(0usize, |acc, &c| {
            let start = *acc;
            *acc += c;
            Some(start)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plans_for_allowed_widths() {
        let p8 = make_digit_plan(64, 8).unwrap();
        assert_eq!((p8.digit_count(), p8.radix()), (8, 256));
        let p16 = make_digit_plan(64, 16).unwrap();
        assert_eq!((p16.digit_count(), p16.radix()), (4, 65536));
        let p4 = make_digit_plan(64, 4).unwrap();
        assert_eq!((p4.digit_count(), p4.radix()), (16, 16));
    }

    #[test]
    fn rejects_bad_widths() {
        assert!(matches!(
            make_digit_plan(64, 5),
            Err(Error::InvalidRadix { radix_bits: 5, .. })
        ));
        assert!(make_digit_plan(64, 32).is_err());
        assert!(make_digit_plan(32, 8).is_err());
    }

    #[test]
    fn digit_extraction() {
        let plan = DigitPlan::default();
        for pass in 0..8 {
            assert_eq!(extract_digit(0, pass, &plan).unwrap(), 0);
        }
        assert_eq!(extract_digit(0x0123456789ABCDEF, 0, &plan).unwrap(), 0xEF);
        assert_eq!(extract_digit(0x0123456789ABCDEF, 7, &plan).unwrap(), 0x01);
        assert_eq!(
            extract_digit(1, 8, &plan),
            Err(Error::PassOutOfRange {
                pass: 8,
                digit_count: 8
            })
        );
    }

    #[test]
    fn prefix_sums() {
        let ps = |v: &[usize]| prefix_sum_exclusive(&CountTable::from_counts(v.to_vec()));
        assert_eq!(ps(&[0, 0, 0, 0]), [0, 0, 0, 0]);
        assert_eq!(ps(&[2, 0, 3, 1]), [0, 2, 2, 5]);
        assert_eq!(ps(&[1, 1, 1, 1]), [0, 1, 2, 3]);
    }

    #[test]
    fn digit_tuples_order_like_keys_on_16_bit_subkeys() {
        // exhaustive over all 16-bit keys with a 4-bit radix
        let plan = make_digit_plan(64, 4).unwrap();
        let tuple = |k: u64| -> [usize; 4] {
            [
                plan.digit(k, 3),
                plan.digit(k, 2),
                plan.digit(k, 1),
                plan.digit(k, 0),
            ]
        };
        let tuples: Vec<[usize; 4]> = (0..=u16::MAX as u64).map(tuple).collect();
        assert!(tuples.windows(2).all(|w| w[0] < w[1]));
    }

    fn plan_strategy() -> impl Strategy<Value = DigitPlan> {
        prop_oneof![Just(4u32), Just(8), Just(16)].prop_map(|b| make_digit_plan(64, b).unwrap())
    }

    proptest! {
        #[test]
        fn digits_reassemble_key(key in any::<u64>(), plan in plan_strategy()) {
            let rebuilt = (0..plan.digit_count()).fold(0u64, |acc, pass| {
                acc | ((extract_digit(key, pass, &plan).unwrap() as u64) << (pass as u32 * plan.radix_bits()))
            });
            prop_assert_eq!(rebuilt, key);
        }

        #[test]
        fn prefix_sum_tiles_total(counts in proptest::collection::vec(0usize..50, 1..64)) {
            let table = CountTable::from_counts(counts.clone());
            let starts = prefix_sum_exclusive(&table);
            prop_assert_eq!(starts[0], 0);
            for i in 1..counts.len() {
                prop_assert_eq!(starts[i], starts[i - 1] + counts[i - 1]);
            }
            prop_assert_eq!(starts[counts.len() - 1] + counts[counts.len() - 1], table.total());
        }
    }
}
