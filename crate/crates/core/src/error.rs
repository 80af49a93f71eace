use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An eigenvalue computation violated its theoretical bounds by more
    /// than rounding noise.
    #[error("numerical instability: {0}")]
    NumericalInstability(String),
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
