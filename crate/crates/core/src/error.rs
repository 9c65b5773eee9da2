use alloc::string::String;

/// Everything that can go wrong while building, evaluating or comparing series.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("infinite product does not terminate: {0}")]
    NonTerminating(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("non-integer exponent: {0}")]
    NonIntegerExponent(String),
    #[error("divergent bilateral sum: {0}")]
    Divergent(String),
    #[error("a-degree overflow: evaluation at a = 1 would drop terms")]
    OverflowUnsound,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("negative power of a: {0}")]
    NegativeAExponent(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("syntax error at {line}:{column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("unbound variable `{name}` at {line}:{column}")]
    UnboundVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("duplicate identity name `{0}`")]
    DuplicateName(String),
    #[error("result has negative powers of q: {0}")]
    LaurentResult(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotInvertible(_) => "NotInvertible",
            Error::NonTerminating(_) => "NonTerminating",
            Error::BadParameters(_) => "BadParameters",
            Error::NonIntegerExponent(_) => "NonIntegerExponent",
            Error::Divergent(_) => "Divergent",
            Error::OverflowUnsound => "OverflowUnsound",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InsufficientTruncation(_) => "InsufficientTruncation",
            Error::InexactDivision(_) => "InexactDivision",
            Error::NegativeAExponent(_) => "NegativeAExponent",
            Error::DivisionByZero(_) => "DivisionByZero",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnboundVariable { .. } => "UnboundVariable",
            Error::DuplicateName(_) => "DuplicateName",
            Error::LaurentResult(_) => "LaurentResult",
        }
    }

    /// True for errors raised while reading DSL text, as opposed to evaluating it.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnboundVariable { .. } | Error::DuplicateName(_)
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
