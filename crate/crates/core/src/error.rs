use thiserror::Error;

use crate::matroid::CopointDefect;
use crate::set::ElementSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid copoint family: {0}")]
    InvalidCopoints(CopointDefect),

    #[error("matroid is not simple: {0}")]
    NotSimple(String),

    #[error("ground set size {0} outside 1..=64")]
    GroundSetSize(usize),

    #[error("truncation rank {k} outside 1..={max}")]
    RankOutOfRange { k: usize, max: usize },

    #[error("needs rank at least {needed}, found {found}")]
    RankTooSmall { needed: usize, found: usize },

    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("enumeration of {count} subsets exceeds cap {cap}")]
    EnumerationCapExceeded { count: u128, cap: u128 },

    #[error("invalid clutter: {0}")]
    InvalidClutter(String),

    #[error("exact search needs n <= {cap}, got n = {n}")]
    ExactCapExceeded { n: usize, cap: usize },

    #[error("copoint {0:?} contains no coline")]
    NoColineContained(ElementSet),

    #[error("{lines} lines exceeds subset enumeration cap {cap}")]
    SubsetCapExceeded { lines: usize, cap: usize },

    #[error("{0} is not a line of the graph")]
    NotALine(ElementSet),

    #[error("graph lacks property beta: {0}")]
    PropertyBetaRequired(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: element {element} outside 1..={n}")]
    ElementOutOfRange {
        line: usize,
        element: usize,
        n: usize,
    },

    #[error("line {line}: compact digit token `{token}` needs n <= 9 (n = {n})")]
    CompactTokenWithLargeN {
        line: usize,
        token: String,
        n: usize,
    },
}

impl Error {
    /// Input-format problems, as opposed to well-formed input describing an
    /// invalid or unsupported object.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::ElementOutOfRange { .. }
                | Error::CompactTokenWithLargeN { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
