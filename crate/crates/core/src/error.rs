use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid partition {0}")]
    Partition(String),
    #[error("invalid polynomial: {0}")]
    Polynomial(String),
    #[error("invalid input: {0}")]
    Input(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("T-degree {degree} exceeds reversal degree {bound}")]
    DegreeExceeded { degree: u32, bound: u32 },
    #[error("interpolation needs {needed} points with distinct abscissae, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("interpolated coefficient of t^{exponent} is not an integer: {value}")]
    NonIntegralCoefficient { exponent: usize, value: String },
    #[error("surplus point ({x}, {y}) disagrees with interpolant value {value}")]
    ExtraPointMismatch { x: String, y: String, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("module has {elements} elements, above the exhaustive-search bound {bound}")]
    SizeBound { elements: u128, bound: usize },
    #[error("{0} is not an odd prime power")]
    BadFieldSize(u64),
    #[error(transparent)]
    Interpolation(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticError {
    #[error("denominator vanishes at s = 0 after reduction")]
    PoleAtCenter,
    #[error("(-1)^r = {sign_r} does not match eta(N) = {eta_n}")]
    ParityMismatch { sign_r: i32, eta_n: i32 },
    #[error("invalid curve data: {0}")]
    InvalidCurve(String),
    #[error("the shift s -> s + 1/2 needs even powers of q^(s/2); found exponent {0}")]
    ShiftNotRepresentable(i64),
}

/// Crate-level error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
