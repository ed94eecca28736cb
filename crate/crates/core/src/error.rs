use thiserror::Error;

use crate::expr::ParseError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("syntax error {0}")]
    Parse(#[from] ParseError),
    #[error("invalid expression: {0}")]
    Expression(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("rewrite budget exceeded while reducing {0}")]
    RewriteBudget(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("orientation failure: rule {0} does not decrease the termination order")]
    Orientation(String),
    #[error("wrong alphabet: {0}")]
    WrongAlphabet(String),
    #[error("braiding rejected: {0}")]
    Braiding(String),
    #[error("pole in rule {rule}: {source}")]
    RulePole { rule: String, source: ScalarError },
    #[error("not in center: odd part {0}")]
    NotInCenter(String),
    #[error("confluent spectrum: {0}")]
    ConfluentSpectrum(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
