use thiserror::Error;

use crate::oracle::SphereTable;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at t = 0, no power series expansion")]
    NotExpandable,
    #[error("power series coefficient of t^{0} is not an integer")]
    NonIntegral(usize),
    #[error("oracle budget exceeded after {} complete spheres", .0.counts.len())]
    Budget(Box<SphereTable>),
}

pub type Result<T> = std::result::Result<T, Error>;
