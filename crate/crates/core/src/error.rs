use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the admissible domain (bad `n`, `k`, angle, coordinate...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical routine failed to converge or hit an impossible state.
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
