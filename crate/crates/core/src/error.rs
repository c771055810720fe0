use alloc::string::String;

/// Errors raised by the exact algebra and the index harness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("non-monomial divisor")]
    NonMonomialDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("sqrt requires unit constant term")]
    SqrtNonUnit,
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("matrix series needs entries without constant term")]
    NotNilpotent,
    #[error("supertrace oracle requires even n")]
    OddDimension,
    #[error("unsupported spinor dimension {0}")]
    UnsupportedSpinorDim(usize),
    #[error("exterior exponential requires no degree-0 component")]
    DegreeZeroComponent,
    #[error("unknown Lie algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("inner product cannot be orthonormalized exactly: {0}")]
    NotOrthonormalizable(String),
    #[error("alpha must land in so(n)")]
    AlphaNotAntisymmetric,
    #[error("order too low for pairing")]
    OrderTooLow,
    #[error("cannot identify point-supported distribution")]
    NoPattern,
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
