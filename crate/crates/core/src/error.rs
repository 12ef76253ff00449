use thiserror::Error;

/// Failure modes shared by every module of the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix or complex shapes do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// An algebraic identity (d∘d = 0, simplicial identities, chain-map
    /// commutation) failed on supplied data.
    #[error("identity violated: {0}")]
    Identity(String),
    /// An operator index or constructor parameter is out of its domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The input does not satisfy the operation's precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A degree lies outside the range in which a truncated object is valid.
    #[error("out of range: {0}")]
    Range(String),
    /// A document could not be decoded.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
