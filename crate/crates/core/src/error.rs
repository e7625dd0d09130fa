use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("singular Weierstrass equation (discriminant is zero)")]
    SingularCurve,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point does not have the required order: {0}")]
    WrongOrder(String),
    #[error("unsupported torsion level {0}")]
    UnsupportedLevel(u32),
    #[error("{0} is not a basis of the torsion module")]
    NotABasis(String),
    #[error("torsion is not rational over any extension of degree <= {0}")]
    ExtensionTooLarge(usize),
    #[error("series precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("Miller evaluation hit a zero or pole")]
    MillerDegenerate,
    #[error("pairing calibration failed: {0}")]
    Calibration(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
