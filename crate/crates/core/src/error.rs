use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed scalar string {0:?}")]
    ParseScalar(String),

    #[error("polynomials have different variable counts ({left} vs {right})")]
    VarCountMismatch { left: usize, right: usize },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid base change: {0}")]
    InvalidTransform(String),

    #[error("outside open set: vanished {}", .vanished.join(", "))]
    OutsideOpenSet { vanished: Vec<String> },

    #[error("undecided outside U: vanished {}", .vanished.join(", "))]
    UndecidedOutsideU { vanished: Vec<String> },

    #[error("{op} is not available for dim {dim}")]
    UnsupportedDimension { op: &'static str, dim: usize },

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // Scalar parse failures surface through serde as custom errors; keep
        // their distinct kind so callers can map exit codes.
        let msg = e.to_string();
        if let Some(rest) = msg.strip_prefix("malformed scalar string ") {
            let raw = rest.split(" at line").next().unwrap_or(rest);
            return Error::ParseScalar(raw.trim_matches('"').to_string());
        }
        for (prefix, make) in [
            ("invalid parameters: ", Error::InvalidParams as fn(String) -> Error),
            ("invalid base change: ", Error::InvalidTransform),
        ] {
            if let Some(rest) = msg.strip_prefix(prefix) {
                let raw = rest.split(" at line").next().unwrap_or(rest);
                return make(raw.to_string());
            }
        }
        Error::Format(msg)
    }
}
