use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numeric error: {message} (error estimate {estimate:e})")]
    Numeric { message: String, estimate: f64 },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("kernel evaluated at its singular point x = 0")]
    Singularity,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>, estimate: f64) -> Self {
        Error::Numeric {
            message: msg.into(),
            estimate,
        }
    }
}
