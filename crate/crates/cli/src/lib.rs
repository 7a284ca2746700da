//! Text, JSON and DOT formats for fundamental lattices, and the command-line
//! driver behind the `fglattice` binary.

pub mod app;
pub mod dot;
pub mod json;
pub mod text;

use fglattice::ErrorKind;

pub use app::run;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A predicate was false or a sweep found counterexamples.
    pub const FALSE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot parse {what} {input:?}: {why}")]
    Parse {
        what: &'static str,
        input: String,
        why: String,
    },
    #[error(transparent)]
    Core(#[from] fglattice::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("brute force disagrees with the criterion: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Json(_) => exit::USAGE,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Usage | ErrorKind::ResourceLimit => exit::USAGE,
                ErrorKind::Internal => exit::INTERNAL,
            },
            CliError::Io(_) | CliError::Disagreement(_) => exit::INTERNAL,
        }
    }
}
