use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("evaluation error: {0}")]
    Eval(#[from] EvalError),
    #[error("data error in {file} line {line}: {msg}")]
    Data { file: String, line: usize, msg: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unsupported for algebra {0}: {1}")]
    UnsupportedAlgebra(String, String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("generators are linearly dependent: {0}")]
    DependentGenerators(String),
    #[error("dimension {0} is not supported (at most 3)")]
    DimensionUnsupported(usize),
    #[error("unknown table row `{0}`")]
    UnknownRow(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("algebra parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("system is not polynomial in the unknowns: {0}")]
    NotPolynomial(String),
    #[error("system is positive-dimensional (free unknowns: {0})")]
    PositiveDimensional(String),
    #[error("no such example: {0}")]
    UnknownExample(usize),
    #[error("{0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(String),
}

/// Failures while evaluating an expression at a point.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("symbol `{0}` has no value")]
    Unbound(String),
    #[error("transcendental function {0} has no exact value")]
    NotExact(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
