use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed problem file: {0}")]
    Json(String),

    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },

    #[error("the `{0}` operation needs `{1}`")]
    Missing(&'static str, &'static str),

    #[error("invalid size cap {0:?}: expected a positive integer")]
    SizeCap(String),

    #[error(transparent)]
    Library(#[from] predynkin::Error),
}

impl CliError {
    pub fn field(field: &str, message: impl Into<String>) -> Self {
        CliError::Field {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// 3 for exhausted size budgets, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(predynkin::Error::SizeLimitExceeded(_))
            | CliError::Library(predynkin::Error::GroundSize(_)) => 3,
            _ => 2,
        }
    }
}
