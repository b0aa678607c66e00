use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::space::WordSpace;
use crate::word::{same_alphabet, Alphabet, Word};

/// A set of words of common length `n` over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    alphabet: Alphabet,
    n: usize,
    words: BTreeSet<Word>,
}

impl Code {
    pub fn new(alphabet: Alphabet, n: usize) -> Self {
        Code {
            alphabet,
            n,
            words: BTreeSet::new(),
        }
    }

    /// Builds a code, silently merging duplicates.
    pub fn from_words<I>(alphabet: Alphabet, n: usize, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut code = Code::new(alphabet, n);
        for w in words {
            code.insert(w)?;
        }
        Ok(code)
    }

    /// Convenience for binary codes written as digit strings.
    pub fn binary(words: &[&str]) -> Result<Self> {
        let parsed = words
            .iter()
            .map(|s| Word::parse(s, Alphabet::BINARY))
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map_or(0, Word::len);
        Code::from_words(Alphabet::BINARY, n, parsed)
    }

    /// The whole space `Σ_q^n` as a code.
    pub fn full_space(alphabet: Alphabet, n: usize) -> Result<Self> {
        let space = WordSpace::new(alphabet, n)?;
        Ok(Code {
            alphabet,
            n,
            words: space.iter().collect(),
        })
    }

    pub(crate) fn from_ranks(space: &WordSpace, ranks: impl IntoIterator<Item = u64>) -> Self {
        Code {
            alphabet: space.alphabet(),
            n: space.word_len(),
            words: ranks.into_iter().map(|r| space.word(r)).collect(),
        }
    }

    /// Returns `false` if the word was already present.
    pub fn insert(&mut self, word: Word) -> Result<bool> {
        same_alphabet(self.alphabet, word.alphabet())?;
        if word.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: word.len(),
            });
        }
        Ok(self.words.insert(word))
    }

    pub fn remove(&mut self, word: &Word) -> bool {
        self.words.remove(word)
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.contains(word)
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.alphabet.size()
    }

    /// Common word length.
    #[inline]
    pub fn word_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words in lexicographic order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Word> {
        self.words.iter()
    }

    /// `A ⊗ B = { ab : a ∈ A, b ∈ B }`.
    pub fn tensor(&self, other: &Code) -> Result<Code> {
        same_alphabet(self.alphabet, other.alphabet)?;
        let mut words = BTreeSet::new();
        for a in &self.words {
            for b in &other.words {
                words.insert(a.concat(b)?);
            }
        }
        Ok(Code {
            alphabet: self.alphabet,
            n: self.n + other.n,
            words,
        })
    }

    pub fn union(&self, other: &Code) -> Result<Code> {
        same_alphabet(self.alphabet, other.alphabet)?;
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut out = self.clone();
        out.words.extend(other.words.iter().cloned());
        Ok(out)
    }

    /// Sorted lexicographic ranks; the space must fit the enumeration budget.
    pub(crate) fn ranks(&self) -> Result<(WordSpace, Vec<u64>)> {
        let space = WordSpace::new(self.alphabet, self.n)?;
        let q = self.q();
        let ranks = self
            .words
            .iter()
            .map(|w| crate::word::rank_of(w.symbols(), q))
            .collect();
        Ok((space, ranks))
    }
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a Word;
    type IntoIter = std::collections::btree_set::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}
