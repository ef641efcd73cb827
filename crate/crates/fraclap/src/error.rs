use std::fmt;
use std::process::ExitCode;

/// Failure of a CLI run, carrying the process exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters rejected before or during computation.
    Usage(String),
    /// A numerical routine could not reach its tolerance.
    NonConvergence(String),
    /// One or more verification checks failed.
    Verification(usize),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }

    pub fn to_exit(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::NonConvergence(m) => write!(f, "error: {m}"),
            CliError::Verification(n) => write!(f, "verification failed: {n} check(s) out of tolerance"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fraclap_core::Error> for CliError {
    fn from(e: fraclap_core::Error) -> Self {
        match e {
            fraclap_core::Error::Convergence { .. } => CliError::NonConvergence(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
