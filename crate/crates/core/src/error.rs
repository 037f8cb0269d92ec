//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid weight type: {0}")]
    InvalidWeights(String),
    #[error("weight arity mismatch: expected {expected} components, got {got}")]
    WeightMismatch { expected: usize, got: usize },
    #[error("operation requires exactly three weights, got {0}")]
    UnsupportedWeight(usize),
    #[error("K0 coordinate length mismatch: {0} vs {1}")]
    K0Mismatch(usize, usize),
    #[error("invalid tube data: {0}")]
    InvalidTube(String),
    #[error("summands must lie in pairwise distinct tubes")]
    SameTube,
    #[error("offset out of range: {0}")]
    OffsetRange(String),
    #[error("{0} is not a submodule type of {1}")]
    NotSubmodule(String, String),
    #[error("hom precondition not met: {0}")]
    HomPrecondition(String),
    #[error("class mismatch: {0}")]
    ClassMismatch(String),
    #[error("scale bound exceeded: {0}")]
    ScaleBound(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
