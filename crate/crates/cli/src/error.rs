use thiserror::Error;

/// Failures of a single invocation, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { message: String, offset: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } => 2,
            _ => 1,
        }
    }
}

impl From<pseudoquotient::Error> for CliError {
    fn from(e: pseudoquotient::Error) -> Self {
        use pseudoquotient::Error;
        match e {
            Error::Domain(m) | Error::Config(m) => CliError::Domain(m),
            Error::Usage(m) => CliError::Usage(m),
        }
    }
}

/// Malformed JSON is a syntax error; well-formed JSON of the wrong shape is a domain error.
impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_syntax() || e.is_eof() {
            CliError::Syntax {
                message: format!("invalid JSON: {e}"),
                offset: 0,
            }
        } else {
            CliError::Domain(format!("invalid configuration: {e}"))
        }
    }
}
