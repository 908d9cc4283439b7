use thiserror::Error;

use crate::exact_linalg::LinalgError;
use crate::lie_core::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed tensor: {0}")]
    MalformedTensor(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("coefficients are not the adjoint ones: {0}")]
    CoefficientMismatch(String),
    #[error("invalid input: {}", .0.summary_line())]
    InvalidInput(Box<ValidationReport>),
    #[error("representation does not restrict: {0}")]
    NotRestrictable(String),
    #[error("not a Rota-Baxter operator of weight 1: {0}")]
    NotRotaBaxter(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("not a section: {0}")]
    NotASection(String),
    #[error("cocycle has a nonzero middle component")]
    NonzeroMiddleComponent,
    #[error("coboundary leaves the bigraded subcomplex: {0}")]
    LeavesSubcomplex(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
}

impl Error {
    pub fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
