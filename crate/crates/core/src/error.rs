use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomials live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,
    #[error("variable `{0}` already exists in the ring")]
    VariableCollision(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("the ideal is the unit ideal; it defines the empty set")]
    EmptySet,
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("input must be a hypersurface (a single generator): {0}")]
    NotHypersurface(String),
    #[error("degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("torsion is not cyclic: {0:?}")]
    NonCyclicTorsion(Vec<u64>),
    #[error("set is bounded: no solutions escape to infinity")]
    BoundedSet,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("genericity retries exhausted after {attempts} attempts: {last}")]
    RetriesExhausted { attempts: usize, last: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
