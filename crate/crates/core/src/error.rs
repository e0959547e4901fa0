use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("symbol `{symbol}` has arity {arity}, above the configured cap {cap}")]
    ArityCapExceeded {
        symbol: String,
        arity: usize,
        cap: usize,
    },

    #[error("invalid automaton: {0}")]
    Validation(String),

    #[error("monotonicity violation{}: fixed-point iteration is not a chain", .variable.map(|v| format!(" at variable {v}")).unwrap_or_default())]
    MonotonicityViolation { variable: Option<usize> },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),

    #[error("automaton is not unary: symbol `{0}` does not have arity 1")]
    NonUnary(String),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
