use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("validation failure: {0}")]
    Validation(String),
    #[error("mathematical assertion failure: {0}")]
    MathAssertion(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code per the documented convention.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BadField(_) | Error::Validation(_) => 2,
            Error::MathAssertion(_) | Error::Internal(_) => 3,
            Error::Budget(_) => 4,
        }
    }
}
