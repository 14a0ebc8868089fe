use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed configuration.
    Parse(String),
    /// The library rejected the input.
    Domain(semigen::Error),
    Io { path: PathBuf, source: std::io::Error },
    /// A check ran and failed.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io { .. } => 1,
            CliError::Verification(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "configuration: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<semigen::Error> for CliError {
    fn from(e: semigen::Error) -> Self {
        CliError::Domain(e)
    }
}
