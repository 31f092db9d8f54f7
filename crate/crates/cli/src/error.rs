use std::fmt;

use haarint_core::Error;

/// A failed command with its process exit code: 2 parse, 3 dispatch or
/// measure, 4 engine, 5 internal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: 2, kind: "parse", message: message.into() }
    }

    pub fn dispatch(message: impl Into<String>) -> Self {
        CliError { code: 3, kind: "dispatch", message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: 5, kind: "internal", message: message.into() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "error": { "code": self.code, "kind": self.kind, "message": self.message } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse { .. } => (2, "parse"),
            Error::Dispatch(_) | Error::InvalidDimension(_) | Error::InvalidIndex(_) => (3, "dispatch"),
            Error::Pole { .. } => (4, "pole"),
            Error::DegreeTooLarge { .. } | Error::BeyondDesignOrder { .. } => (4, "guard"),
            Error::SymbolicDimension(_) => (4, "argument"),
            Error::NotRational(_) => (4, "not-rational"),
            Error::DegenerateSpectrum(_) => (4, "degenerate-spectrum"),
            Error::SingularSystem | Error::SingularDimension { .. } => (4, "singular"),
            Error::Unsupported(_) => (4, "unsupported"),
            Error::InvalidInput(_) => (4, "invalid-input"),
        };
        CliError { code, kind, message: e.to_string() }
    }
}
