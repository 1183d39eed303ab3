use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(String, String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("source and target algebras do not match")]
    AlgebraMismatch,
    #[error("element has {got} coordinates, algebra has {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("deforming element needs positive valuation")]
    ZeroValuation,
    #[error("deforming element must be homogeneous of degree 1")]
    NotDegreeOne,
    #[error("not an ideal: m^{arity}({}) leaves the subset", tuple.join(", "))]
    NotAnIdeal { arity: usize, tuple: Vec<String> },
    #[error("DGA axiom '{axiom}' fails on ({})", tuple.join(", "))]
    NotADga { axiom: &'static str, tuple: Vec<String> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::CutoffMismatch(..) => "E_CUTOFF_MISMATCH",
            Error::InvalidAlgebra(_) => "E_INVALID_ALGEBRA",
            Error::InvalidHom(_) => "E_INVALID_HOM",
            Error::AlgebraMismatch => "E_ALGEBRA_MISMATCH",
            Error::Dimension { .. } => "E_DIMENSION",
            Error::ZeroValuation => "E_ZERO_VALUATION",
            Error::NotDegreeOne => "E_NOT_DEGREE_ONE",
            Error::NotAnIdeal { .. } => "E_NOT_AN_IDEAL",
            Error::NotADga { .. } => "E_NOT_A_DGA",
            Error::InvalidParameter(_) => "E_INVALID_PARAMETER",
            Error::Parse { .. } => "E_PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
