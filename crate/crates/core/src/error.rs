use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u8, right: u8 },
    #[error("unsupported cyclotomic order {0} (expected 1, 2 or 3)")]
    UnsupportedOrder(u8),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,

    #[error("cannot parse affine type {input:?}: {reason}")]
    TypeSyntax { input: String, reason: String },
    #[error("unsupported affine type {0}")]
    UnsupportedType(String),
    #[error("invalid root data: {0}")]
    InvalidRootData(String),
    #[error("det A^({n}) for {ty} is {computed}, expected {expected}")]
    DeterminantMismatch {
        ty: String,
        n: u32,
        expected: i64,
        computed: String,
    },
    #[error("value is not a rational integer: {0}")]
    NotInteger(String),

    #[error("series truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("inexact division of series coefficient {value} by {divisor}")]
    InexactDivision { value: String, divisor: String },
    #[error("invalid modulus p = {p}: {reason}")]
    InvalidModulus { p: u32, reason: String },

    #[error("color {color} has period {period}, which does not divide part {part}")]
    Divisibility {
        part: u32,
        color: usize,
        period: u32,
    },
    #[error("{0}")]
    Io(String),
    #[error("invalid usage: {0}")]
    Usage(String),
}
