use std::path::PathBuf;

use econfree::ErrorClass;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Load {
        path: PathBuf,
        #[source]
        source: econfree::Error,
    },

    #[error(transparent)]
    Core(#[from] econfree::Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 configuration, 3 data, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Load { source: e, .. } | CliError::Core(e) => match e.class() {
                ErrorClass::Parameter => 2,
                ErrorClass::Data => 3,
                ErrorClass::Numerical => 4,
            },
            CliError::Write { .. } => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
