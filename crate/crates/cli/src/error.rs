use std::fmt;

/// Failure of a CLI invocation, rendered as one machine-readable line.
#[derive(Debug)]
pub enum CliError {
    Parse {
        line: Option<usize>,
        message: String,
    },
    Validation {
        key: String,
        message: String,
    },
    Io {
        path: String,
        message: String,
    },
    UnknownPreset(String),
    Core(colmem_core::Error),
}

impl CliError {
    pub fn validation(key: &str, message: impl Into<String>) -> Self {
        CliError::Validation {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl fmt::Display, err: impl fmt::Display) -> Self {
        CliError::Io {
            path: path.to_string(),
            message: err.to_string(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Validation { .. } => "validation",
            CliError::Io { .. } => "io",
            CliError::UnknownPreset(_) => "unknown-preset",
            CliError::Core(e) => e.kind(),
        }
    }

    /// Process exit status: 2 for bad input, 1 for failures while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } | CliError::UnknownPreset(_) => 2,
            CliError::Io { .. } | CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: kind={}", self.kind())?;
        match self {
            CliError::Parse {
                line: Some(l),
                message,
            } => write!(f, " line={l} message={message:?}"),
            CliError::Parse {
                line: None,
                message,
            } => write!(f, " message={message:?}"),
            CliError::Validation { key, message } => write!(f, " key={key} message={message:?}"),
            CliError::Io { path, message } => write!(f, " path={path:?} message={message:?}"),
            CliError::UnknownPreset(name) => {
                write!(f, " message={:?}", format!("no preset named {name}"))
            }
            CliError::Core(e) => write!(f, " message={:?}", e.to_string()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<colmem_core::Error> for CliError {
    fn from(e: colmem_core::Error) -> Self {
        CliError::Core(e)
    }
}
