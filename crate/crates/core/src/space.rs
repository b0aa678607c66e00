//! Whole word spaces `Σ_q^n`: lexicographic enumeration, partitioning and
//! run-count statistics.

use std::ops::Range;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::limits;
use crate::math::{binomial, pow};
use crate::word::{unrank_into, Alphabet, Word};

/// The set `Σ_q^n`, indexed by lexicographic rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordSpace {
    alphabet: Alphabet,
    n: usize,
    size: u64,
}

impl WordSpace {
    /// Checks `q^n` against the process-wide enumeration budget.
    pub fn new(alphabet: Alphabet, n: usize) -> Result<Self> {
        Self::with_budget(alphabet, n, limits::enumeration_budget())
    }

    pub fn with_budget(alphabet: Alphabet, n: usize, cap: u64) -> Result<Self> {
        let size = limits::space_size_within(alphabet.size(), n, cap)?;
        Ok(WordSpace { alphabet, n, size })
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.alphabet.size()
    }

    #[inline]
    pub fn word_len(&self) -> usize {
        self.n
    }

    /// Number of words, `q^n`.
    #[inline]
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn word(&self, rank: u64) -> Word {
        assert!(rank < self.size, "rank {rank} outside space of size {}", self.size);
        let mut buf = vec![0u8; self.n];
        unrank_into(rank, self.q(), &mut buf);
        Word::from_raw(self.alphabet, buf)
    }

    /// All words in lexicographic order.
    pub fn iter(&self) -> SpaceIter {
        self.slice(0..self.size)
    }

    /// Words whose rank falls in `range`, in lexicographic order.
    pub fn slice(&self, range: Range<u64>) -> SpaceIter {
        let end = range.end.min(self.size);
        let start = range.start.min(end);
        let mut buf = vec![0u8; self.n];
        unrank_into(start, self.q(), &mut buf);
        SpaceIter {
            alphabet: self.alphabet,
            buf,
            next: start,
            end,
        }
    }

    /// Splits the space into at most `parts` contiguous, non-empty rank ranges.
    pub fn partitions(&self, parts: usize) -> Vec<Range<u64>> {
        let parts = (parts.max(1) as u64).min(self.size).max(1);
        let base = self.size / parts;
        let extra = self.size % parts;
        let mut out = Vec::with_capacity(parts as usize);
        let mut start = 0;
        for i in 0..parts {
            let len = base + u64::from(i < extra);
            out.push(start..start + len);
            start += len;
        }
        out
    }
}

/// Lexicographic iterator over a rank range of a [`WordSpace`].
pub struct SpaceIter {
    alphabet: Alphabet,
    buf: Vec<u8>,
    next: u64,
    end: u64,
}

impl SpaceIter {
    fn advance(&mut self) {
        let q = self.alphabet.size();
        for slot in self.buf.iter_mut().rev() {
            *slot += 1;
            if *slot < q {
                return;
            }
            *slot = 0;
        }
    }
}

impl Iterator for SpaceIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.next >= self.end {
            return None;
        }
        let out = Word::from_raw(self.alphabet, self.buf.clone());
        self.next += 1;
        if self.next < self.end {
            self.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpaceIter {}

/// Enumerates `Σ_q^n` in lexicographic order under the default budget.
pub fn enumerate_words(q: u32, n: usize) -> Result<SpaceIter> {
    Ok(WordSpace::new(Alphabet::new(q)?, n)?.iter())
}

/// Number of words in `Σ_q^n` with exactly `r` runs: `q (q-1)^(r-1) C(n-1, r-1)`.
pub fn count_words_with_runs(q: u32, n: usize, r: usize) -> Result<BigUint> {
    let alphabet = Alphabet::new(q)?;
    if r < 1 || r > n {
        return Err(Error::InvalidParameter(format!(
            "run count {r} outside 1..={n}"
        )));
    }
    let q = alphabet.size() as u64;
    Ok(BigUint::from(q) * pow(q - 1, (r - 1) as u64) * binomial((n - 1) as u64, (r - 1) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(it: SpaceIter) -> Vec<String> {
        it.map(|w| w.to_string()).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(render(enumerate_words(2, 2).unwrap()), ["00", "01", "10", "11"]);
        assert_eq!(render(enumerate_words(3, 1).unwrap()), ["0", "1", "2"]);
        assert_eq!(render(enumerate_words(2, 0).unwrap()), [""]);
    }

    #[test]
    fn budget_is_enforced() {
        let err = WordSpace::with_budget(Alphabet::BINARY, 11, 1024).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                requested: 2048,
                cap: 1024
            }
        );
        assert!(WordSpace::with_budget(Alphabet::BINARY, 10, 1024).is_ok());
    }

    #[test]
    fn partitions_concatenate_to_whole_space() {
        let space = WordSpace::new(Alphabet::new(3).unwrap(), 4).unwrap();
        let mut all = Vec::new();
        for part in space.partitions(7) {
            all.extend(space.slice(part));
        }
        let whole: Vec<_> = space.iter().collect();
        assert_eq!(all, whole);
        assert_eq!(space.partitions(1000).len(), 81);
    }

    #[test]
    fn run_count_examples() {
        assert_eq!(count_words_with_runs(2, 4, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(count_words_with_runs(2, 4, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_words_with_runs(3, 3, 3).unwrap(), BigUint::from(12u32));
        assert!(count_words_with_runs(2, 4, 5).is_err());
        assert!(count_words_with_runs(2, 4, 0).is_err());
    }
}
