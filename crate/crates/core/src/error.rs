use thiserror::Error;

use crate::words::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pair count must be between 1 and {max}, got {got}")]
    InvalidPairCount { got: usize, max: usize },

    #[error("bracket display supports at most 3 pairs, alphabet has {0}")]
    BracketModeUnsupported(usize),

    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { position: usize, symbol: char },

    #[error("enumeration of {requested} words exceeds the cap of {cap}")]
    ResourceBound { requested: u128, cap: u128 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed quotient data at line {line}: {message}")]
    QuotientFormat { line: usize, message: String },

    #[error("word is not in the two-sided Dyck language (residual \"{residual}\")")]
    NotTwoSided { residual: Word },

    #[error("word is in the two-sided Dyck language, no separating quotient exists")]
    NotSeparable,

    #[error("the identity has no residual witness")]
    EmptyWord,

    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}
