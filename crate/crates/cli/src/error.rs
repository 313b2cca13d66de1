use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

/// Process exit codes. 1 means a run completed but reported failures.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;
pub const EXIT_INTERNAL: i32 = 6;
pub const EXIT_IO: i32 = 7;

#[derive(Debug)]
pub enum CliError {
    Core(pbent::Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Usage(String),
}

impl From<pbent::Error> for CliError {
    fn from(e: pbent::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    code: i32,
    message: String,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "parse" => EXIT_PARSE,
            "precondition" => EXIT_PRECONDITION,
            "budget" => EXIT_BUDGET,
            "io" => EXIT_IO,
            "usage" => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        }
    }

    /// `{"error": {"kind": .., "code": .., "message": ..}}`
    pub fn to_json(&self) -> String {
        let obj = ErrorObject {
            error: ErrorBody {
                kind: self.kind(),
                code: self.exit_code(),
                message: self.to_string(),
            },
        };
        serde_json::to_string(&obj).expect("error object serializes")
    }
}

pub type CliResult<T> = Result<T, CliError>;
