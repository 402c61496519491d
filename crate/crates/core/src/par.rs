//! Data-parallel map helpers.
//!
//! Sweeps over angle values and batches of sample points are independent, so
//! they run on rayon when the `parallel` feature (default) is enabled and fall
//! back to a plain sequential loop otherwise. Results always come back in
//! input order.

/// Sequential map, kept callable in every build for benchmarking.
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Rayon-backed map.
#[cfg(feature = "parallel")]
pub fn map_par<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Maps over `items`, in parallel when the feature is on.
#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_par(items, f)
}

/// Maps over `items`, in parallel when the feature is on.
#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_seq(items, f)
}
