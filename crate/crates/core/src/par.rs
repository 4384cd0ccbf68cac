//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature off, or when a caller asks for sequential
//! execution, everything runs on the current thread. Both paths return the
//! same results.

use std::ops::Range;

/// Smallest index in `range` satisfying `pred`.
pub fn find_first<F>(range: Range<u64>, parallel: bool, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        let (lo, hi) = (range.start as usize, range.end as usize);
        return (lo..hi)
            .into_par_iter()
            .find_first(|&i| pred(i as u64))
            .map(|i| i as u64);
    }
    let _ = parallel;
    range.into_iter().find(|&i| pred(i))
}

/// `items.iter().map(f).collect()`, in parallel when allowed. Output order
/// follows input order.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
