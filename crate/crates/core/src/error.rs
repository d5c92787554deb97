use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A computation would exceed a configured enumeration budget.
    #[error("{what}: requested {requested} exceeds budget {budget}{hint}")]
    Budget {
        what: String,
        requested: u128,
        budget: u128,
        hint: String,
    },

    /// Dimension or length disagreement between inputs.
    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    Shape {
        context: String,
        expected: String,
        found: String,
    },

    /// An input violates an operation precondition.
    #[error("invalid {param}: {msg}")]
    Invalid { param: String, msg: String },

    /// Malformed line-oriented input.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Malformed graph6 byte.
    #[error("graph6 error at byte offset {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    /// Exact arithmetic invariant was violated (a bug, never expected).
    #[error("arithmetic invariant violated: {0}")]
    Arithmetic(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: impl Into<String>, requested: u128, budget: u128) -> Self {
        Error::Budget {
            what: what.into(),
            requested,
            budget,
            hint: String::new(),
        }
    }

    pub(crate) fn budget_hint(
        what: impl Into<String>,
        requested: u128,
        budget: u128,
        hint: impl Into<String>,
    ) -> Self {
        Error::Budget {
            what: what.into(),
            requested,
            budget,
            hint: format!(" ({})", hint.into()),
        }
    }

    pub(crate) fn shape(
        context: impl Into<String>,
        expected: impl ToString,
        found: impl ToString,
    ) -> Self {
        Error::Shape {
            context: context.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn invalid(param: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Invalid {
            param: param.into(),
            msg: msg.into(),
        }
    }

    /// True for errors caused by an enumeration or group-size budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
