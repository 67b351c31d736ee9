use thiserror::Error;

/// Errors raised by the library. Variants map onto CLI exit codes via [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("q = {0} is not a prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible over F_{q}")]
    NotIrreducible { q: u32 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: usize, got: Vec<u32> },
    #[error("field size {q}^{m} exceeds the enumeration cap {cap}")]
    UnsupportedSize { q: u32, m: usize, cap: u64 },
    #[error("no built-in modulus for q = {q}, m = {m}")]
    NoDefaultModulus { q: u32, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumeration of {what} needs {needed} items, above the cap {cap}")]
    EnumerationTooLarge { what: String, needed: u128, cap: u128 },
    #[error("evaluation points are linearly dependent over the base field")]
    DependentPoints,
    #[error("extension degree m = {m} is smaller than the code length n = {n}")]
    DegreeTooSmall { m: usize, n: usize },
    #[error("first {k} columns of the generator are dependent; no systematic form without permuting")]
    NotSystematizable { k: usize },
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("second code is not a strict subcode of the first")]
    NotASubcode,
    #[error("packet length m = {m} is below l + n = {needed}")]
    PacketTooShort { m: usize, needed: usize },
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("lifting needs m = {expected} (inner m + n), got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("cannot reach rank >= {needed} with a {rows}x{cols} matrix")]
    InfeasibleRank { needed: usize, rows: usize, cols: usize },
    #[error("trial budget exceeded: completed {completed} of {requested}")]
    BudgetExceeded { completed: u64, requested: u64 },
    #[error("unknown acceptance suite {0:?}")]
    SuiteUnknown(String),
    #[error("invalid configuration field `{field}`: {reason}")]
    Config { field: String, reason: String },
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// CLI exit code: 3 for enumeration or budget overflow, 2 for every other precondition failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EnumerationTooLarge { .. } | Error::BudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
