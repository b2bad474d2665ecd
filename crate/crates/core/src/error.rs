use thiserror::Error;

use crate::freealg::Mode;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} outside 1..={cap}")]
    GeneratorOutOfRange { index: usize, cap: usize },

    #[error("generator cap {cap} exceeds the hard limit of {max}")]
    CapTooLarge { cap: usize, max: usize },

    #[error("mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("empty generator set")]
    EmptySubset,

    #[error("subset {subset} is not contained in {{1..{n}}}")]
    SubsetOutOfRange { subset: String, n: usize },

    #[error("invalid degree n = {n}: {reason}")]
    InvalidDegree { n: usize, reason: &'static str },

    #[error("operation requires both modes commutative (got a = {a_mode}, b = {b_mode})")]
    RequiresCommutative { a_mode: Mode, b_mode: Mode },

    /// Basis indices are 1-based.
    #[error("structure constants are not associative: (e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")]
    NonAssociative { i: usize, j: usize, k: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no value assigned to generator x{0}")]
    MissingAssignment(usize),

    #[error("commutative-mode expression cannot be evaluated in a noncommutative algebra")]
    CommutativeInNoncommutative,

    #[error("algebra has no unit, cannot evaluate a constant term")]
    NoUnit,

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("unknown builtin algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certificate does not reproduce its target: {0}")]
    CertificateMismatch(String),
}
