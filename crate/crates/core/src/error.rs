//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced while constructing, loading, simulating or decoding schemes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside its domain (even alphabet, zero analyses, wrong vector length, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The all-zero vector has no antipodal representative.
    #[error("the zero vector has no canonical representative")]
    ZeroVector,

    /// More elements were requested than `(s^k - s) / 2` distinct usable codes exist.
    #[error("capacity exceeded: {requested} elements requested but only {capacity} fit in {analyses} analyses with {states} states")]
    CapacityExceeded {
        requested: usize,
        capacity: u64,
        analyses: usize,
        states: u32,
    },

    /// No subset of admissible pairs admits a zero-sum sign assignment.
    #[error("plan infeasible: no balanced assignment of {elements} elements exists for {analyses} analyses with {states} states")]
    PlanInfeasible {
        elements: usize,
        analyses: usize,
        states: u32,
    },

    /// An intermediate value does not fit the fixed-width integer type.
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    /// An element was placed under two different values in the same analysis.
    #[error("element {element} appears under values {first} and {second} in analysis {analysis}")]
    ConflictingAssignment {
        analysis: usize,
        element: usize,
        first: i32,
        second: i32,
    },

    /// A plan file could not be parsed.
    #[error("plan file format error: {0}")]
    Format(String),

    /// A plan file parsed but describes an invalid codebook.
    #[error("plan file violates codebook invariants: {0}")]
    Invariant(String),

    /// The hypothesis names an element outside `1..=n`.
    #[error("invalid hypothesis: element {element} is outside 1..={elements}")]
    InvalidHypothesis { element: usize, elements: usize },

    /// An outcome is nonzero and matches neither a code nor an inverted code.
    #[error("inconsistent outcome {0:?}: no single anomaly explains it")]
    InconsistentOutcome(Vec<i32>),

    /// Several hypotheses produce the same outcome. Only possible for invalid codebooks.
    #[error("ambiguous outcome {outcome:?}: {candidates} hypotheses produce it")]
    AmbiguousOutcome {
        outcome: Vec<i32>,
        candidates: usize,
    },

    /// The exhaustive oracle refuses instances larger than its bound.
    #[error("instance too large for the exhaustive oracle: {0}")]
    ScaleGuard(String),

    /// The balance-scale model and the algebraic model disagree. Always a defect.
    #[error("scale model disagrees with algebraic outcome in analysis {analysis}: scale {scale}, algebraic {algebraic}")]
    RouteDisagreement {
        analysis: usize,
        scale: i32,
        algebraic: i32,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
