//! Error type shared by all engine modules.

use thiserror::Error;

/// Everything that can go wrong while building an algebra or applying an
/// operation. Validation errors name the offending basis elements so a
/// failure is diagnosable from the message alone.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("slot index {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },

    #[error("multiplication is not associative on ({a}, {b}, {c})")]
    NotAssociative { a: String, b: String, c: String },

    #[error("unit law fails for basis element {name}")]
    NoUnit { name: String },

    #[error("the pairing matrix derived from the counit is degenerate")]
    DegeneratePairing,

    #[error("grading violation: {detail}")]
    GradingViolation { detail: String },

    #[error("cyclic word is empty")]
    EmptyWord,

    #[error("cut tuple ({i},{j},{k},{l}) out of range for word length {len}")]
    CutOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        len: usize,
    },

    #[error("invalid shuffle/out-slot selection: {detail}")]
    BadShuffle { detail: String },

    #[error("cannot make a cochain from an arity-0 tensor")]
    ZeroArity,

    #[error("operation requires a connected graded algebra with canonical splitting: {detail}")]
    NotConnectedGraded { detail: String },

    #[error("parse error at position {position}: {detail}")]
    ParseError { position: usize, detail: String },

    #[error("unknown basis name `{name}`")]
    UnknownBasisName { name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
