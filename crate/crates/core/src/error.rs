use thiserror::Error;

/// Errors raised by the library's operation boundaries.
#[derive(Debug, Error)]
pub enum Error {
    /// Two ground sets that were required to be disjoint overlap.
    #[error("ground sets overlap: {0}")]
    OverlappingGround(String),

    /// An argument does not live on the expected ground set.
    #[error("ground set mismatch: {0}")]
    GroundMismatch(String),

    /// A size bound was exceeded (canonical forms, brute-force enumerations).
    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),

    /// A relation set is not a partial order, or a label is unknown.
    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    /// Structural precondition violation (sizes, emptiness, monoid tags).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Text-grammar parse failure, with a byte position into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
