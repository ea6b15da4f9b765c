use alloc::collections::TryReserveError;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("radix width {radix_bits} not supported for {key_bits}-bit keys (allowed: 4, 8, 16)")]
    InvalidRadix { key_bits: u32, radix_bits: u32 },
    #[error("pass index {pass} out of range for {digit_count} digits")]
    PassOutOfRange { pass: usize, digit_count: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("invalid model domain: {0}")]
    Domain(&'static str),
    #[error("scratch allocation failed: {0}")]
    Alloc(#[from] TryReserveError),
}
