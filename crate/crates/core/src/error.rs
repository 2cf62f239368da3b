// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Result`]. Variants are
//! grouped loosely by pipeline stage: linear algebra, pulse model,
//! spectroscopy, compilation, and runtime.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions surfaced by the library.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A basis index or index pair was out of range or mis-ordered.
    #[error("index error: {0}")]
    Index(String),

    /// A matrix expected to be unitary failed the check.
    #[error("matrix is not unitary: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotUnitary {
        /// Largest absolute entry of m†m − I.
        deviation: f64,
        /// Tolerance the check ran at.
        tolerance: f64,
    },

    /// A numeric input was NaN or infinite.
    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    /// A transition string or level pair was malformed.
    #[error("invalid transition: {0}")]
    InvalidTransition(String),

    /// Two pulses in one simultaneous group drive a shared level.
    #[error("overlapping transitions: level {0} is driven by more than one pulse in a group")]
    OverlappingTransitions(String),

    /// A gate name was not recognized.
    #[error("unknown gate: {0}")]
    UnknownGate(String),

    /// A physical level lookup failed.
    #[error("unknown level: {0}")]
    UnknownLevel(String),

    /// A level-scheme name was not recognized.
    #[error("unknown scheme: {0} (expected fig3 or fig4)")]
    UnknownScheme(String),

    /// Both ends of a transition refer to the same register role.
    #[error("transition endpoints share the role {0}")]
    SameRole(String),

    /// Input text (JSON or CSV) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A negative rotation angle cannot be turned into a pulse duration.
    #[error("cannot schedule negative rotation angle {0}; re-express as a positive rotation with adjusted phase")]
    NegativeAngle(f64),

    /// A level scheme failed validation for the requested operation.
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    /// A state vector's norm left the allowed band around 1.
    #[error("state norm drifted to {0}")]
    NormDrift(f64),

    /// A measurement outcome index was outside 0..=3.
    #[error("unknown outcome index: {0}")]
    UnknownOutcome(usize),

    /// An underlying file operation failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
