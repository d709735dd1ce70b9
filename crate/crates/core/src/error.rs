use thiserror::Error;

use crate::code::Condition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,

    #[error("symbol {symbol} at position {position} is outside the alphabet [0, {q})")]
    SymbolOutOfRange {
        position: usize,
        symbol: u32,
        q: u32,
    },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("alphabet mismatch: expected q={expected}, got q={actual}")]
    AlphabetMismatch { expected: u32, actual: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Parameters are valid for the code definition but below the range in
    /// which the encoder is proven to work.
    #[error("{0} below proven range (pass --allow-unproven-parameters to override)")]
    BelowProvenRange(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("no codeword is consistent with the received sequence")]
    NoCandidate,

    #[error("received sequence is consistent with more than one codeword")]
    AmbiguousCodeword,

    #[error("NotDecodable: {0}")]
    NotDecodable(String),

    #[error("not a codeword: condition {0} violated")]
    NotACodeword(Condition),

    #[error("not a member of the 1-RLL suffix code")]
    NotAMember,

    #[error("array is a codeword but lies outside the encoder image")]
    OutsideEncoderImage,

    /// An internal invariant of an encoder failed. Never caused by valid input
    /// in the proven parameter range.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("malformed file: {0}")]
    MalformedFile(String),

    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
}

impl Error {
    /// True for errors that mean "this received word cannot be decoded", as
    /// opposed to malformed input or parameters.
    pub fn is_decode_failure(&self) -> bool {
        matches!(
            self,
            Error::NoCandidate | Error::AmbiguousCodeword | Error::NotDecodable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
