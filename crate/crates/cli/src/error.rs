use serde_json::{json, Value};

/// Failure with a stable code; printed to stderr as a JSON object.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub detail: Value,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> CliError {
        CliError { code, message: message.into(), detail: Value::Null }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"code": self.code, "message": self.message});
        if !self.detail.is_null() {
            v["detail"] = self.detail.clone();
        }
        json!({ "error": v })
    }
}

impl From<troplag_core::Error> for CliError {
    fn from(e: troplag_core::Error) -> CliError {
        use troplag_core::Error as E;
        let detail = match &e {
            E::EpsilonTooLarge { epsilon, center, what } => {
                json!({"ball": {"center": center, "radius": epsilon}, "meets": what})
            }
            E::Parse { line, column, .. } => json!({"line": line, "column": column}),
            E::OverlappingSublevels { a, b, at } => json!({"regions": [a, b], "at": at}),
            _ => Value::Null,
        };
        CliError { code: e.code(), message: e.to_string(), detail }
    }
}

impl From<troplag_ainfty::Error> for CliError {
    fn from(e: troplag_ainfty::Error) -> CliError {
        use troplag_ainfty::Error as E;
        let detail = match &e {
            E::NotAnIdeal { arity, tuple } => json!({"arity": arity, "tuple": tuple}),
            E::NotADga { axiom, tuple } => json!({"axiom": axiom, "tuple": tuple}),
            E::Parse { line, column, .. } => json!({"line": line, "column": column}),
            _ => Value::Null,
        };
        CliError { code: e.code(), message: e.to_string(), detail }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::new("E_IO", e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError {
            code: "E_PARSE",
            message: e.to_string(),
            detail: json!({"line": e.line(), "column": e.column()}),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
