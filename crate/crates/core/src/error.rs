use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported division by {0}")]
    UnsupportedDivision(String),
    #[error("not a square of a q-power/[2]/[3] monomial: {0}")]
    NotMonomial(String),
    #[error("invalid evaluation point q = {0} (need q > 0, q != 1)")]
    InvalidEvaluationPoint(f64),
    #[error("state spaces differ: {0}")]
    SpaceMismatch(String),
    #[error("generator index {index} out of range for {sites} sites")]
    IndexOutOfRange { index: usize, sites: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("coupled basis is not orthonormal: {0}")]
    NonOrthonormal(String),
    #[error("coupled basis incomplete: nonzero residual for column {0}")]
    BasisIncomplete(String),
    #[error("golden data: {0}")]
    Golden(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
