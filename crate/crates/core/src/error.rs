use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial has no monomials")]
    EmptyPolynomial,
    #[error("duplicate exponent {0:?}")]
    DuplicateExponent(Vec<i64>),
    #[error("ray generator {0:?} is not primitive")]
    NonPrimitiveRay(Vec<i64>),
    #[error("fan is not supported: {0}")]
    UnsupportedFan(String),
    #[error("operation requires n = {required}, got n = {got}")]
    UnsupportedDimension { required: String, got: usize },
    #[error("epsilon {epsilon} too large: ball of radius {epsilon} at {center:?} meets {what}")]
    EpsilonTooLarge { epsilon: f64, center: Vec<f64>, what: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("point {0:?} lies outside the grid domain")]
    OutOfDomain(Vec<f64>),
    #[error("exponent set {0:?} is not a cell of the dual subdivision")]
    NotACell(Vec<Vec<i64>>),
    #[error("components merge at grid spacing {h}; refine to at most {suggested}")]
    ComponentsMerge { h: f64, suggested: f64 },
    #[error("invalid surgery shape: {0}")]
    InvalidShape(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("2c-sublevels of regions {a:?} and {b:?} overlap at {at:?}")]
    OverlappingSublevels { a: Vec<i64>, b: Vec<i64>, at: Vec<f64> },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("fan regions do not satisfy the covering precondition: {0}")]
    FanCovering(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::EmptyPolynomial => "E_EMPTY_POLYNOMIAL",
            Error::DuplicateExponent(_) => "E_DUPLICATE_EXPONENT",
            Error::NonPrimitiveRay(_) => "E_NON_PRIMITIVE_RAY",
            Error::UnsupportedFan(_) => "E_UNSUPPORTED_FAN",
            Error::UnsupportedDimension { .. } => "E_UNSUPPORTED_DIMENSION",
            Error::EpsilonTooLarge { .. } => "E_EPSILON_TOO_LARGE",
            Error::InvalidGrid(_) => "E_INVALID_GRID",
            Error::OutOfDomain(_) => "E_OUT_OF_DOMAIN",
            Error::NotACell(_) => "E_NOT_A_CELL",
            Error::ComponentsMerge { .. } => "E_COMPONENTS_MERGE",
            Error::InvalidShape(_) => "E_INVALID_SHAPE",
            Error::InvalidParameter(_) => "E_INVALID_PARAMETER",
            Error::OverlappingSublevels { .. } => "E_OVERLAPPING_SUBLEVELS",
            Error::Quadrature(_) => "E_QUADRATURE",
            Error::FanCovering(_) => "E_FAN_COVERING",
            Error::Parse { .. } => "E_PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
