//! Execution helpers: data-parallel map with a sequential fallback.
//!
//! All hot loops in the crate funnel through [`map_collect`] so that the
//! `parallel` feature is the only place where rayon appears. Results are
//! collected in input order and reduced sequentially by the callers, which
//! keeps every floating point result bit-identical whether or not the
//! feature is enabled and regardless of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items the parallel path is not worth the scheduling
/// overhead and we always run sequentially.
pub(crate) const PAR_THRESHOLD: usize = 16;

/// Applies `f` to `0..n` and collects the results in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_collect<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    if n < PAR_THRESHOLD {
        (0..n).map(f).collect()
    } else {
        (0..n).into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).map(f).collect()
}
