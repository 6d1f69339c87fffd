use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured work bound would be exceeded.
    #[error("infeasible: {bound} = {requested} exceeds the limit {limit}")]
    Infeasible {
        bound: &'static str,
        limit: u128,
        requested: u128,
    },

    /// Two computations that must agree did not. Signals a bug or a wrong
    /// convention, never bad user input.
    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("grid too small: {points} grid points, {unknowns} unknowns, rank {rank}")]
    GridTooSmall {
        points: usize,
        unknowns: usize,
        rank: usize,
    },

    #[error("missing Hodge table keys: {}", .0.join(", "))]
    MissingKeys(Vec<String>),

    #[error("series constant term is not invertible")]
    NotInvertible,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn infeasible(bound: &'static str, limit: impl Into<u128>, requested: impl Into<u128>) -> Self {
        Error::Infeasible {
            bound,
            limit: limit.into(),
            requested: requested.into(),
        }
    }
}
