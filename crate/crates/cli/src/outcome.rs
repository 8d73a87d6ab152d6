use std::fmt;

/// Process exit codes. Falsification has its own code so a batch run can
/// tell a failed mathematical check apart from bad input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExitStatus {
    Pass = 0,
    Internal = 1,
    Input = 2,
    Falsified = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        Self { status, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(ExitStatus::Input, message)
    }

    pub fn falsified(message: impl Into<String>) -> Self {
        Self::new(ExitStatus::Falsified, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(ExitStatus::Internal, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<epicox::Error> for CliError {
    fn from(err: epicox::Error) -> Self {
        use epicox::Error as E;
        let status = match err {
            E::Falsified(_) => ExitStatus::Falsified,
            E::Internal(_) => ExitStatus::Internal,
            _ => ExitStatus::Input,
        };
        Self::new(status, err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::input(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        Self::internal(format!("could not serialize output: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
