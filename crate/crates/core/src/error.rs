use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series has a zero leading coefficient and cannot be inverted")]
    ZeroConstantTerm,
    #[error("series exponential requires a vanishing constant term at offset 0")]
    NonzeroConstantTerm,
    #[error("series logarithm requires constant term 1 at offset 0")]
    LogDomain,
    #[error("series offsets {0} and {1} do not differ by an integer")]
    IncompatibleOffsets(String, String),
    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(String),
    #[error("infinite product diverges: step {0} is not positive")]
    DivergentProduct(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("nome |q| = {0} is not inside the unit disk")]
    NomeOutsideDisk(f64),
    #[error("nome lies on the unit circle (|q| = {0})")]
    NomeOnUnitCircle(f64),
    #[error("truncation bound not met within {0} terms")]
    TruncationFailure(usize),
    #[error("theta(v; tau) vanishes at the requested point")]
    ThetaZero,
    #[error("denominator vanishes at summation index {0}")]
    PoleHit(i64),
    #[error("no exponential decay along the contour: {0}")]
    DecayCertificateFailed(String),
    #[error("pole of the kernel at distance {distance:e} from the contour (limit {limit:e})")]
    PoleNearContour { distance: f64, limit: f64 },
    #[error("representation invalid: contour shift crosses a pole of sec ({0})")]
    PoleStripCrossed(String),
    #[error("quadrature budget of {0} nodes exhausted")]
    BudgetExceeded(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    #[error("unknown series family: {0}")]
    UnknownFamily(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
