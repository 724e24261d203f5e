use std::io;
use std::path::Path;

use fuzzyvar_core::Error as CoreError;

/// Exit code for bad flags, config files and unsupported settings.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for unreadable or invalid input data.
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Data(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Data(_) | CliError::Io { .. } => EXIT_DATA,
        }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Tags a data problem with the file it came from.
    pub fn in_file(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::Data(format!("{}: {err}", path.display()))
    }
}

/// Parameters the user chose are config errors; malformed profiles and
/// samples are data errors.
impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::NotStrict(kind) => CliError::Config(format!(
                "t-norm '{kind}' is not strict: estimation needs a strict Archimedean t-norm \
                 (product or power:<a>) so that its multiplicative generator is invertible"
            )),
            CoreError::Domain { .. }
            | CoreError::InvalidGenerator(_)
            | CoreError::NotArchimedean(_)
            | CoreError::Unsupported(_)
            | CoreError::NotConcave
            | CoreError::Config(_) => CliError::Config(err.to_string()),
            CoreError::InvalidGrid(_)
            | CoreError::InvalidProfile(_)
            | CoreError::GridMismatch
            | CoreError::Degenerate(_)
            | CoreError::Empty(_)
            | CoreError::Parse(_) => CliError::Data(err.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
