use thiserror::Error;

use crate::sets::FiniteSet;

/// Errors raised by the combinatorial and analytic engines.
///
/// Legitimate "nothing found at this scale" outcomes of the searches are not
/// errors; they are reported through [`crate::Search::NotFound`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no front found within {fuel} generator steps")]
    NoFrontFound { fuel: u64 },

    #[error("{set} does not decompose along the block family: {reason}")]
    NotInSum { set: FiniteSet, reason: String },

    #[error("block vector of {0} is degenerate (zero norm)")]
    DegenerateBlock(FiniteSet),

    #[error("at least two blocks are required, found {found}")]
    InsufficientBlocks { found: usize },

    #[error("cannot build probe blocks: {0}")]
    InsufficientUniverse(String),

    #[error("coloring is not total: {0}")]
    NotTotal(String),

    #[error("model value did not stabilize for coefficients {coeffs}")]
    NotStabilized { coeffs: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
