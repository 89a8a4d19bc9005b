use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image sequence is not a bijection of 0..{0}")]
    NotBijective(usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("group order {order} exceeds the enumeration threshold {threshold}")]
    ThresholdExceeded { order: String, threshold: u64 },

    #[error("classes have not been enumerated for this group")]
    ClassesNotEnumerated,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("character table validation failed ({relation}): {detail}")]
    Validation { relation: String, detail: String },

    #[error("{0} is not a character: {1}")]
    NotACharacter(String, String),

    #[error("Frobenius-Schur indicator {value} outside {{0, 1, -1}} for row {row}")]
    BadIndicator { row: usize, value: String },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("eigenspace splitting failed: {0}")]
    SplittingFailure(String),

    #[error("class matching failed: {0}")]
    Matching(String),

    #[error("invalid group specification: {0}")]
    InvalidSpec(String),

    #[error("unknown subgroup selector `{selector}` for {group}")]
    UnknownSelector { group: String, selector: String },

    #[error("order check failed for {name}: expected {expected}, got {actual}")]
    OrderMismatch {
        name: String,
        expected: String,
        actual: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
