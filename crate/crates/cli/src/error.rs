// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Exit status 2 for usage and schema problems, 1 for everything the physics rejects.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Physics(#[from] qubit_qi::Error),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema { .. } => 2,
            CliError::Physics(_) | CliError::Verification(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
