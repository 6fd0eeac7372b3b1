use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),

    #[error("no nodes")]
    NoNodes,

    #[error("graph has no edges")]
    NoEdges,

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("invalid sampling fraction {0}, expected a value in (0, 1]")]
    InvalidFraction(f64),

    #[error("requested {k} clusters but only {n} nodes")]
    TooFewNodes { n: usize, k: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
