use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("table is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("table entry [{row}][{col}] = {value} is out of range 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("index 0 is not the identity: 0*{0} or {0}*0 differs from {0}")]
    IdentityNotZero(usize),
    #[error("operation is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("brace relation fails at (a, b, c) = ({a}, {b}, {c})")]
    BraceRelation { a: usize, b: usize, c: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("census cap exceeded: order {requested} requested, cap is {cap}")]
    CensusCap { requested: usize, cap: usize },
    #[error("oracle cap exceeded: order {requested} requested, cap is {cap}")]
    OracleCap { requested: usize, cap: usize },
    #[error("unknown group label {label:?}; available: {}", available.join(", "))]
    UnknownLabel {
        label: String,
        available: Vec<String>,
    },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("json error at {path}: {message}")]
    Json { path: String, message: String },
    #[error("io error: {0}")]
    Io(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
