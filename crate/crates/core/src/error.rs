// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("location history is empty")]
    EmptyHistory,

    #[error("alphabet has no locations to reside in")]
    EmptyAlphabet,

    #[error("location id {id} is outside an alphabet of {alphabet_size} labels")]
    UnknownLocation { id: u32, alphabet_size: usize },

    #[error("duplicate alphabet label {0:?}")]
    DuplicateLabel(String),

    #[error("invalid time-warped history: {0}")]
    InvalidWarpedHistory(String),

    #[error("invalid residence history: {0}")]
    InvalidResidence(String),

    #[error("history length mismatch: expected {expected} units, got {actual}")]
    HistoryLengthMismatch { expected: usize, actual: usize },

    #[error("warped index {index} out of range 1..={len}")]
    IndexError { index: usize, len: usize },

    #[error("instance too large for exhaustive enumeration: {0}")]
    InstanceTooLarge(String),

    #[error("first interval contains no observations")]
    InsufficientData,

    #[error("invalid configuration: {0}")]
    ConfigError(String),
}
