//! q-ary words and the handful of sequence relations everything else is
//! built from.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Size of a q-ary alphabet `{0, 1, ..., q-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);

    pub fn new(q: u32) -> Result<Self> {
        if !(2..=u8::MAX as u32).contains(&q) {
            return Err(Error::InvalidAlphabet(q));
        }
        Ok(Alphabet(q as u8))
    }

    #[inline]
    pub fn size(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn contains(self, symbol: u8) -> bool {
        symbol < self.0
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An immutable word over a q-ary alphabet. The empty word is valid.
///
/// Words order lexicographically with symbol 0 smallest; this is the
/// canonical order for every set of words in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl Word {
    /// Validates `symbols` against alphabet size `q`.
    pub fn new(symbols: &[u32], q: u32) -> Result<Self> {
        let alphabet = Alphabet::new(q)?;
        let mut out = Vec::with_capacity(symbols.len());
        for &s in symbols {
            if s >= q {
                return Err(Error::SymbolOutOfRange {
                    symbol: s,
                    q: alphabet.size(),
                });
            }
            out.push(s as u8);
        }
        Ok(Word {
            alphabet,
            symbols: out,
        })
    }

    pub fn from_symbols(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as u32,
                q: alphabet.size(),
            });
        }
        Ok(Word { alphabet, symbols })
    }

    /// Caller guarantees every symbol is below `q`.
    #[inline]
    pub(crate) fn from_raw(alphabet: Alphabet, symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| alphabet.contains(s)));
        Word { alphabet, symbols }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            symbols: Vec::new(),
        }
    }

    /// Parses the textual rendering produced by `Display`.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty(alphabet));
        }
        let symbols: Vec<u8> = if text.contains(',') {
            text.split(',')
                .map(|tok| {
                    let v: u32 = tok
                        .trim()
                        .parse()
                        .map_err(|_| Error::MalformedWord(text.to_string()))?;
                    check_symbol(v, alphabet)
                })
                .collect::<Result<_>>()?
        } else if alphabet.size() <= 10 {
            text.chars()
                .map(|ch| {
                    let v = ch
                        .to_digit(10)
                        .ok_or_else(|| Error::MalformedWord(text.to_string()))?;
                    check_symbol(v, alphabet)
                })
                .collect::<Result<_>>()?
        } else {
            // a single symbol without separators
            let v: u32 = text
                .parse()
                .map_err(|_| Error::MalformedWord(text.to_string()))?;
            vec![check_symbol(v, alphabet)?]
        };
        Ok(Word { alphabet, symbols })
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.alphabet.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    #[inline]
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// Number of maximal runs of equal symbols. Undefined for the empty word.
    pub fn runs(&self) -> Result<usize> {
        if self.symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(run_count(&self.symbols))
    }

    /// True iff `self` is obtained from `other` by deleting `|other| - |self|` symbols.
    pub fn is_subsequence_of(&self, other: &Word) -> Result<bool> {
        same_alphabet(self.alphabet, other.alphabet)?;
        Ok(is_subsequence(&self.symbols, &other.symbols))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        same_alphabet(self.alphabet, other.alphabet)?;
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(Word {
            alphabet: self.alphabet,
            symbols,
        })
    }

    /// Lexicographic rank within `Σ_q^{|self|}`. `None` if it does not fit in a `u64`.
    pub fn rank(&self) -> Option<u64> {
        checked_rank(&self.symbols, self.q())
    }

    /// Binary projection `(x_1 mod 2, ..., x_n mod 2)`.
    pub fn parity_projection(&self) -> Word {
        Word {
            alphabet: Alphabet::BINARY,
            symbols: self.symbols.iter().map(|s| s & 1).collect(),
        }
    }
}

fn check_symbol(v: u32, alphabet: Alphabet) -> Result<u8> {
    if v >= alphabet.size() as u32 {
        return Err(Error::SymbolOutOfRange {
            symbol: v,
            q: alphabet.size(),
        });
    }
    Ok(v as u8)
}

pub(crate) fn same_alphabet(a: Alphabet, b: Alphabet) -> Result<()> {
    if a != b {
        return Err(Error::AlphabetMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    Ok(())
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.symbols
            .cmp(&other.symbols)
            .then(self.alphabet.cmp(&other.alphabet))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q() <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else {
            for (i, &s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε/q{}", self.q())
        } else {
            write!(f, "{self}/q{}", self.q())
        }
    }
}

/// Parses binary words, the common case in tests and examples.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s, Alphabet::BINARY)
    }
}

#[inline]
pub(crate) fn run_count(symbols: &[u8]) -> usize {
    if symbols.is_empty() {
        return 0;
    }
    1 + symbols.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Greedy left-to-right matching.
pub(crate) fn is_subsequence(short: &[u8], long: &[u8]) -> bool {
    if short.len() > long.len() {
        return false;
    }
    let mut it = long.iter();
    short.iter().all(|s| it.any(|l| l == s))
}

#[inline]
pub(crate) fn checked_rank(symbols: &[u8], q: u8) -> Option<u64> {
    symbols.iter().try_fold(0u64, |acc, &s| {
        acc.checked_mul(q as u64)?.checked_add(s as u64)
    })
}

/// Rank of a word whose space is known to fit in a `u64`.
#[inline]
pub(crate) fn rank_of(symbols: &[u8], q: u8) -> u64 {
    symbols
        .iter()
        .fold(0u64, |acc, &s| acc * q as u64 + s as u64)
}

/// Writes the length-`buf.len()` word of lexicographic rank `rank` into `buf`.
#[inline]
pub(crate) fn unrank_into(mut rank: u64, q: u8, buf: &mut [u8]) {
    let q = q as u64;
    for slot in buf.iter_mut().rev() {
        *slot = (rank % q) as u8;
        rank /= q;
    }
}
