use netrepo_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("{0}")]
    BadRequest(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("unknown statistic '{0}'")]
    UnknownStatistic(String),
    #[error("unknown collection '{0}'")]
    UnknownCollection(String),
    #[error("no edges or nodes")]
    EmptyGraph,
    #[error("{kind} '{id}' not found")]
    NotFound { kind: &'static str, id: String },
    #[error("storage: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt catalog data: {0}")]
    Corrupt(#[from] serde_json::Error),
}

pub type Result<T, E = ServiceError> = std::result::Result<T, E>;

impl ServiceError {
    pub fn not_found(kind: &'static str, id: impl Into<String>) -> Self {
        Self::NotFound { kind, id: id.into() }
    }

    /// HTTP status code for this error.
    pub fn status(&self) -> u16 {
        match self {
            Self::BadRequest(_)
            | Self::Parse { .. }
            | Self::UnknownStatistic(_)
            | Self::UnknownCollection(_)
            | Self::EmptyGraph => 400,
            Self::InvalidConfig(_) => 422,
            Self::NotFound { .. } => 404,
            Self::Io(_) | Self::Corrupt(_) => 500,
        }
    }

    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Self::BadRequest(_) => "bad_request",
            Self::Parse { .. } => "parse_error",
            Self::InvalidConfig(_) => "invalid_config",
            Self::UnknownStatistic(_) => "unknown_statistic",
            Self::UnknownCollection(_) => "unknown_collection",
            Self::EmptyGraph => "empty_graph",
            Self::NotFound { .. } => "not_found",
            Self::Io(_) | Self::Corrupt(_) => "internal",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            Self::Parse { line, .. } => Some(*line),
            _ => None,
        }
    }
}

impl From<CoreError> for ServiceError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { line, message } => Self::Parse { line, message },
            CoreError::UnknownStatistic(s) => Self::UnknownStatistic(s),
            CoreError::NoNodes => Self::EmptyGraph,
            CoreError::InvalidConfig(s) => Self::InvalidConfig(s),
            CoreError::Io(e) => Self::Io(e),
            other => Self::BadRequest(other.to_string()),
        }
    }
}
