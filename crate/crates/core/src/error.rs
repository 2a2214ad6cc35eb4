use thiserror::Error;

/// Errors raised by the simulation, bound and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested instance exceeds an enumeration or state-space cutoff.
    #[error("size error: {what} = {got} exceeds the limit {limit}")]
    Size {
        what: &'static str,
        got: u64,
        limit: u64,
    },
    /// A textual descriptor could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
