//! Batch driver for slit-exterior vortex flow: configuration, CSV output,
//! the command implementations and the verification checks.

pub mod analysis;
pub mod commands;
pub mod config;
pub mod output;

use std::io;
use std::path::{Path, PathBuf};

pub use config::{parse_config, ConfigError, Mode, RunConfig};

/// Failures that stop a command before it can produce a verdict.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Core(#[from] slitflow_core::Error),
}

impl AppError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        AppError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
