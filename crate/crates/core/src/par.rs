//! Index-range searches that run on rayon when the `parallel` feature is on
//! and sequentially otherwise. Results never depend on the schedule: ties
//! resolve to the smallest index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Smallest `i < n` with `pred(i)`.
pub fn find_first<F>(n: u64, mode: Parallelism, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = mode;
    (0..n).find(|&i| pred(i))
}

/// `(key, i)` minimizing `key(i)` over `start..n`, smallest `i` among ties.
pub fn min_by_key<K, F>(start: u64, n: u64, mode: Parallelism, key: F) -> Option<(K, u64)>
where
    K: Ord + Send,
    F: Fn(u64) -> K + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (start..n).into_par_iter().map(|i| (key(i), i)).min();
    }
    let _ = mode;
    (start..n).map(|i| (key(i), i)).min()
}

/// `f` applied to every item, in order.
pub fn map<T, U, F>(items: &[T], mode: Parallelism, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}
