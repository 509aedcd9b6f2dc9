use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (bad gap index, mixed surfaces, parse failure).
    #[error("input error: {0}")]
    Input(String),
    /// Input is well formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A bounded search gave up before reaching its goal.
    #[error("search exhausted: {0}")]
    Exhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
