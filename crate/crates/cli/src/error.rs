use thiserror::Error;

/// Failures of the command-line layer. Only [`CliError::Core`] wrapping a
/// theorem violation counts as a finding; everything else is operational.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] bolkit_core::Error),

    #[error("unknown catalog id `{0}`")]
    UnknownId(String),

    #[error("invalid construction: {0}")]
    Spec(String),

    #[error("search exceeded the timeout of {0} s")]
    Timeout(u64),

    #[error("configuration: {0}")]
    Config(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl CliError {
    pub fn is_finding(&self) -> bool {
        matches!(self, CliError::Core(e) if e.is_finding())
    }
}

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    Finding = 1,
    Error = 2,
}

impl Outcome {
    pub fn of_error(e: &CliError) -> Outcome {
        if e.is_finding() {
            Outcome::Finding
        } else {
            Outcome::Error
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}
