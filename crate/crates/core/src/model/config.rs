// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether the final residence segment is held to the minimum length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Full,
    TrailingRelaxed,
}

/// Reading of the admissible predecessor set in the run-level recurrence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QInterpretation {
    /// The new segment's own duration must reach `rho`.
    #[default]
    Exclusive,
    /// Duration is summed from the predecessor run itself, as printed.
    Literal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    #[default]
    Daylevel,
    WarpedPaper,
    Candidate,
    Bruteforce,
    Modal,
}

impl Algorithm {
    pub const fn as_str(self) -> &'static str {
        match self {
            Algorithm::Daylevel => "daylevel",
            Algorithm::WarpedPaper => "warped",
            Algorithm::Candidate => "candidate",
            Algorithm::Bruteforce => "bruteforce",
            Algorithm::Modal => "modal",
        }
    }
}

impl Mode {
    pub const fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::TrailingRelaxed => "trailing-relaxed",
        }
    }
}

impl QInterpretation {
    pub const fn as_str(self) -> &'static str {
        match self {
            QInterpretation::Exclusive => "exclusive",
            QInterpretation::Literal => "literal",
        }
    }
}

macro_rules! display_from_str {
    ($ty:ty, $what:literal, [$($name:literal => $value:expr),+ $(,)?]) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($value),)+
                    other => Err(Error::ConfigError(format!("unknown {} {other:?}", $what))),
                }
            }
        }
    };
}

display_from_str!(Mode, "mode", ["full" => Mode::Full, "trailing-relaxed" => Mode::TrailingRelaxed]);
display_from_str!(QInterpretation, "q interpretation", [
    "exclusive" => QInterpretation::Exclusive,
    "literal" => QInterpretation::Literal,
]);
display_from_str!(Algorithm, "algorithm", [
    "daylevel" => Algorithm::Daylevel,
    "warped" => Algorithm::WarpedPaper,
    "candidate" => Algorithm::Candidate,
    "bruteforce" => Algorithm::Bruteforce,
    "modal" => Algorithm::Modal,
]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Minimum residence length in units.
    pub rho: usize,
    pub mode: Mode,
    /// Only consulted by the run-level solver.
    pub q_interpretation: QInterpretation,
    pub algorithm: Algorithm,
}

impl SolverConfig {
    pub fn new(rho: usize) -> Self {
        Self {
            rho,
            mode: Mode::Full,
            q_interpretation: QInterpretation::Exclusive,
            algorithm: Algorithm::Daylevel,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_q(mut self, q: QInterpretation) -> Self {
        self.q_interpretation = q;
        self
    }

    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub(crate) fn checked_rho(&self) -> Result<usize> {
        if self.rho == 0 {
            return Err(Error::ConfigError("rho must be at least 1".into()));
        }
        Ok(self.rho)
    }
}
