use rand_core::RngCore;

/// Uniform-ish integer in `[lo, hi]` (inclusive). The tiny modulo bias is
/// irrelevant here; what matters is that the stream is deterministic and
/// platform-stable.
pub(crate) fn rng_range(rng: &mut dyn RngCore, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

/// Uniform index in `0..n`.
pub(crate) fn rng_index(rng: &mut dyn RngCore, n: usize) -> usize {
    debug_assert!(n > 0);
    (rng.next_u64() % n as u64) as usize
}
