//! Execution helpers for the embarrassingly parallel outer loops
//! (mass sweeps, initial-height scans, batch profile suites).
//!
//! With the `parallel` feature (default) the work fans out over rayon;
//! without it everything runs sequentially with the same signature. Results
//! come back in input order either way, so outputs are identical across both
//! modes and across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, in parallel when the `parallel` feature is active.
#[cfg(feature = "parallel")]
pub fn par_map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn par_map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential map, kept available for benchmarking against the
/// parallel path.
pub fn seq_map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    items.into_iter().map(f).collect()
}
