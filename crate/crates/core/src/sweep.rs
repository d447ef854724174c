//! Internal helpers for data-parallel sweeps.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..len`, collecting results in index order. Runs on the
/// rayon pool when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..len).map(f).collect()
}
