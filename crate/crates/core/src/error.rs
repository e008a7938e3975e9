use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid algebra context: {0}")]
    InvalidContext(String),

    #[error("resource cap exceeded: {words} words in one degree table (cap {cap})")]
    ResourceCap { words: u64, cap: u64 },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("point not on chart: {0}")]
    NotOnChart(String),

    #[error("theta pairing with the dimension vector is {0}, expected 0")]
    ThetaPairing(String),

    #[error("gluing equations inconsistent at order {order}: {detail}")]
    InconsistentOrder { order: usize, detail: String },

    #[error("non-composable gluing maps: {0}")]
    NotComposable(String),

    #[error("inconsistent graded data: {0}")]
    InconsistentData(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
