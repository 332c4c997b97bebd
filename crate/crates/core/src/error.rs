use thiserror::Error;

use crate::space::MetricViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point identifier {0:?}")]
    InvalidPointId(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("duplicate point {0:?}")]
    DuplicatePoint(String),
    #[error("not a metric: {} violation(s), first: {}", .0.len(), .0[0])]
    InvalidMetric(Vec<MetricViolation>),
    #[error("edge weight {weight} between {a} and {b} is not positive")]
    NonPositiveWeight {
        a: String,
        b: String,
        weight: String,
    },
    #[error("graph is disconnected: no path between {0} and {1}")]
    DisconnectedGraph(String, String),
    #[error("space needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("points of a tuple must be pairwise distinct: {0:?}")]
    NotDistinct(Vec<String>),
    #[error("{class} expects a {expected}-tuple, got {got} points")]
    ArityMismatch {
        class: String,
        expected: usize,
        got: usize,
    },
    #[error("map is not total: no image for {0:?}")]
    IncompleteMap(String),
    #[error("point {0:?} has more than one image")]
    DuplicateImage(String),
    #[error("|X|^|X| = {points}^{points} exceeds the enumeration cap {cap}")]
    SpaceTooLarge { points: usize, cap: u64 },
    #[error("contradictory predicate: {0} both required and excluded")]
    ContradictoryPredicate(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
