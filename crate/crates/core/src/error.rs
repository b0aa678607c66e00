use thiserror::Error;

use crate::Direction;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    InvalidAlphabet(u32),

    #[error("symbol {symbol} is out of range for alphabet size {q}")]
    SymbolOutOfRange { symbol: u32, q: u8 },

    #[error("alphabet mismatch: q={left} vs q={right}")]
    AlphabetMismatch { left: u8, right: u8 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("the number of runs of the empty word is undefined")]
    EmptyWord,

    #[error("radius {radius} exceeds word length {len}")]
    RadiusTooLarge { radius: usize, len: usize },

    #[error("enumeration budget exceeded: {requested} elements requested, cap is {cap}")]
    BudgetExceeded { requested: u128, cap: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("code is not a {radius}-{direction} covering code; uncovered word {witness}")]
    NotCovering {
        radius: usize,
        direction: Direction,
        witness: String,
    },

    #[error("code has no finite {0} covering radius")]
    NoFiniteRadius(Direction),

    #[error("gave up after {attempts} sampling attempts at length {n}")]
    RetriesExhausted { attempts: u32, n: usize },

    #[error("malformed word {0:?}")]
    MalformedWord(String),
}
