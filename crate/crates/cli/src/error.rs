use std::fmt;

/// A failed run, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input: exit code 2.
    Validation(String),
    /// An invariant of the library failed: exit code 3.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mwbound::Error> for CliError {
    fn from(e: mwbound::Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(mwbound::Error::Internal("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(mwbound::Error::SharedLabel("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(mwbound::Error::UnknownPreset("x".into())).exit_code(), 2);
    }
}
