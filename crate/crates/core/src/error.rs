use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("objects live over different coalgebras")]
    CoalgebraMismatch,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(crate::field::FieldSpec, crate::field::FieldSpec),
    #[error("comodule side mismatch: {0}")]
    Side(String),
    #[error("coalgebra map is not surjective")]
    NotSurjective,
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
