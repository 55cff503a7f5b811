use thiserror::Error;

use crate::geom::{ObjectClass, Point};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class mismatch: expected {expected}, found {found}")]
    ClassMismatch {
        expected: ObjectClass,
        found: ObjectClass,
    },
    #[error("point {point} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        point: Point,
        expected: usize,
        found: usize,
    },
    #[error("invalid object #{index}: {reason}")]
    InvalidObject { index: usize, reason: String },
    #[error("weight of object #{index} is {weight}, weights must be positive")]
    NonPositiveWeight { index: usize, weight: String },
    #[error("{found} weights given for {expected} objects")]
    WeightCount { expected: usize, found: usize },
    #[error("unknown object index {0}")]
    UnknownIndex(usize),
    #[error("coloring covers {found} objects, instance has {expected}")]
    ColoringSize { expected: usize, found: usize },
    #[error("color {color} of object #{index} is outside 1..={kappa}")]
    ColorOutOfRange { index: usize, color: u32, kappa: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("algorithm invariant violated: {message}{}", witness_suffix(.witness))]
    AlgorithmInvariant {
        message: String,
        witness: Option<Point>,
    },
    #[error("no proper 4-coloring of the {size}-triangle hypergraph found")]
    NoFourColoring { size: usize },
    #[error("target point #{index} {point} has depth {depth}, at least 2 required")]
    DepthPrecondition {
        index: usize,
        point: Point,
        depth: usize,
    },
    #[error("coloring is not proper: point {witness} is left uncovered by the residual cover")]
    ImproperColoring { witness: Point },
    #[error("target point #{index} {point} is not covered by any object")]
    Uncoverable { index: usize, point: Point },
    #[error("extraction number is unbounded: every cover takes all the weight")]
    Unbounded,
}

fn witness_suffix(w: &Option<Point>) -> String {
    match w {
        Some(p) => format!(" (witness {p})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        Error::AlgorithmInvariant {
            message: message.into(),
            witness: None,
        }
    }
}
