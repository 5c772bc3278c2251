use thiserror::Error;

use crate::model::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("individual {0} has a constant value function on the outcome set")]
    ConstantValueFunction(usize),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("{0}")]
    Io(String),
    #[error("unknown act `{0}`")]
    UnknownAct(String),
    #[error("unknown individual {0}")]
    UnknownIndividual(usize),
    #[error("act covers {found} cells but the partition has {expected}")]
    PartitionMismatch { expected: usize, found: usize },
    #[error("fraction {0} is outside the open interval (0, 1)")]
    FractionOutOfRange(f64),
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
    #[error("invalid problem: {}", format_violations(.0))]
    InvalidProblem(Vec<Violation>),
    #[error("weight set has no vertices")]
    EmptyWeightSet,
    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),
    #[error("cost function is not grounded (minimum penalty {0})")]
    NotGrounded(f64),
    #[error("rule `{0}` is comparator-only and has no numeric score")]
    ComparatorOnly(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid utility vector: {0}")]
    InvalidVector(String),
    #[error("welfare function is not a support function: {0}")]
    NotSupportFunction(String),
    #[error("expansion is not inessential: {0}")]
    NotInessential(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("schema error: {0}")]
    Schema(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
