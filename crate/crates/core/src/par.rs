//! Data-parallel helpers. With the `parallel` feature these fan out on the
//! rayon pool; without it they run the same closures sequentially. Work is
//! split into fixed-size chunks and reduced in chunk order, so results never
//! depend on the number of threads.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Ranks per work item.
pub const CHUNK: u64 = 1 << 13;

/// Splits `0..total` into consecutive chunks of at most [`CHUNK`] ranks.
pub fn chunks(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK))
        .map(|i| i * CHUNK..((i + 1) * CHUNK).min(total))
        .collect()
}

/// Applies `f` to every chunk of `0..total`; results come back in order.
pub fn map_chunks<T, F>(total: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        chunks(total).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        chunks(total).into_iter().map(f).collect()
    }
}

pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn for_each_slice<T, F>(items: &[T], f: F)
where
    T: Sync,
    F: Fn(&T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().for_each(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().for_each(f)
    }
}

/// Maps `f` over `0..count` (seeds, trials, ...) in order.
pub fn map_indices<U, F>(count: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range_exactly() {
        let cs = chunks(3 * CHUNK + 5);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[0], 0..CHUNK);
        assert_eq!(cs[3], 3 * CHUNK..3 * CHUNK + 5);
        assert!(chunks(0).is_empty());
    }

    #[test]
    fn map_chunks_preserves_order() {
        let sums = map_chunks(2 * CHUNK + 1, |r| r.start);
        assert_eq!(sums, vec![0, CHUNK, 2 * CHUNK]);
    }
}
