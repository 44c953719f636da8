use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The variants are grouped by how the command-line front end reports them:
/// input problems, enumeration limits, and consistency failures each map to
/// their own exit status (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: hyperplane has an all-zero normal")]
    ZeroNormal { line: usize },

    #[error("line {line}: duplicate hyperplane (same zero set as line {first})")]
    DuplicateHyperplane { line: usize, first: usize },

    #[error("line {line}: projective hyperplanes must have a zero constant term")]
    ProjectiveConstant { line: usize },

    #[error("index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("enumeration cap exceeded: {r} hyperplanes, cap is {cap}")]
    CapExceeded { r: usize, cap: usize },

    #[error("double complex invariant violated at ({p}, {q}): {what}")]
    DoubleComplex { p: i64, q: i64, what: String },

    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 2,
            Error::Inconsistency(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
