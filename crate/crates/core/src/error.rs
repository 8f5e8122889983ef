use thiserror::Error;

/// Errors produced by constructors and exhaustive operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group type {text:?}: {reason}")]
    GroupSyntax { text: String, reason: String },

    #[error("cyclic factor C{0} is below 2")]
    FactorTooSmall(usize),

    #[error("generator {index} is not a permutation of 0..{points}")]
    NotPermutation { index: usize, points: usize },

    #[error("action is not transitive: {orbit} of {points} points reachable from 0")]
    NotTransitive { orbit: usize, points: usize },

    #[error("a G-space needs at least one point")]
    NoPoints,

    #[error("configuration is empty")]
    EmptyConfiguration,

    #[error("point {point} is out of range for a space of {points} points")]
    PointOutOfRange { point: usize, points: usize },

    #[error("{what} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("partition does not refine the coarser partition")]
    NotRefinement,

    #[error("partition of {got} points used with a space of {expected} points")]
    SizeMismatch { expected: usize, got: usize },

    #[error("rigidity check needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("duplicate planar point ({0})")]
    DuplicatePoint(String),

    #[error("invalid latin data: {0}")]
    InvalidLatin(String),

    #[error("invalid ultrametric spec: {0}")]
    InvalidUltrametric(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
