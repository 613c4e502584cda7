//! Deterministic floating-point reductions.
//!
//! Parallel sums split the input into fixed-size chunks, add each chunk with
//! Neumaier compensation, then add the chunk totals in chunk order. The chunk
//! boundaries never depend on the thread count, so results are bit-identical
//! on any pool size.

use rayon::prelude::*;

/// Number of terms summed sequentially inside one parallel task.
pub const CHUNK_LEN: usize = 1024;

/// Compensated sum of the iterator, in iteration order.
pub fn neumaier<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Sums `f(item)` over `items` in parallel with a partition-independent result.
pub fn ordered_sum<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    if items.len() <= CHUNK_LEN {
        return neumaier(items.iter().map(&f));
    }
    let partials: Vec<f64> = items
        .par_chunks(CHUNK_LEN)
        .map(|c| neumaier(c.iter().map(&f)))
        .collect();
    neumaier(partials)
}
