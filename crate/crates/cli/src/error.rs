// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("input contains no observations")]
    EmptyInput,

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] residency::Error),
}

impl CliError {
    pub fn parse(line: u64, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// 0 success, 1 usage, 2 parse, 3 oracle budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::EmptyInput => 2,
            CliError::Core(residency::Error::InstanceTooLarge(_)) => 3,
            _ => 1,
        }
    }
}
