/// Hints that `ptr` is about to be written. No-op off x86_64.
#[inline(always)]
#[allow(unused_variables)]
pub(crate) fn prefetch_write<T>(ptr: *const T) {
    #[cfg(target_arch = "x86_64")]
    {
        use core::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        // prefetch never faults, even on an address past the allocation
        #[allow(unused_unsafe)]
        unsafe {
            _mm_prefetch(ptr as *const i8, _MM_HINT_T0)
        };
    }
}
