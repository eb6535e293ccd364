use std::fmt;

/// Error type shared by every numerical routine in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    Domain(String),
    /// Input inside the mathematical domain but outside the scale this
    /// implementation guarantees (e.g. Bessel arguments beyond 1e4,
    /// lattice truncations beyond the dimension cap). Never silent.
    UnsupportedScale(String),
    /// A solver failed to converge or a bracket could not be established.
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::UnsupportedScale(msg) => write!(f, "unsupported scale: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
