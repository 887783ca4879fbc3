//! Front end for `hardy-core`: JSON run configs in, JSON/CSV/SVG/mesh files out.

pub mod config;
pub mod mesh_io;
pub mod run;
pub mod svg;

use std::path::Path;

pub use config::{Command, Overrides, RunConfig};
pub use run::{execute, run};

/// Exit status for rejected input.
pub const EXIT_INVALID: i32 = 2;
/// Exit status for numerical failures.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Core(#[from] hardy_core::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    pub fn parse(line: usize, message: String) -> Self {
        CliError::Parse { line, message }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_INVALID,
        }
    }

    /// Variant name, used as the `kind` of JSON error records.
    pub fn kind(&self) -> String {
        let debug = match self {
            CliError::Core(e) => format!("{e:?}"),
            other => format!("{other:?}"),
        };
        debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
    }
}
