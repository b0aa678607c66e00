use std::sync::atomic::{AtomicU64, Ordering};

/// Dense bitmap over lexicographic ranks, one bit per word. Marking is
/// atomic so several workers can mark concurrently.
pub struct Bitmap {
    blocks: Vec<AtomicU64>,
    len: u64,
}

impl Bitmap {
    pub fn new(len: u64) -> Self {
        let blocks = (0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
        Bitmap { blocks, len }
    }

    #[inline]
    pub fn set(&self, i: u64) {
        self.blocks[(i / 64) as usize].fetch_or(1 << (i % 64), Ordering::Relaxed);
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        self.blocks[(i / 64) as usize].load(Ordering::Relaxed) & (1 << (i % 64)) != 0
    }

    #[cfg(test)]
    pub fn count_ones(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| b.load(Ordering::Relaxed).count_ones() as u64)
            .sum()
    }

    /// Smallest unset index, if any.
    pub fn first_zero(&self) -> Option<u64> {
        self.zeros().next()
    }

    /// Unset indices in increasing order.
    pub fn zeros(&self) -> impl Iterator<Item = u64> + '_ {
        let len = self.len;
        self.blocks.iter().enumerate().flat_map(move |(bi, b)| {
            let mut free = !b.load(Ordering::Relaxed);
            std::iter::from_fn(move || {
                if free == 0 {
                    return None;
                }
                let bit = free.trailing_zeros() as u64;
                free &= free - 1;
                Some(bi as u64 * 64 + bit)
            })
            .take_while(move |&i| i < len)
        })
    }
}
