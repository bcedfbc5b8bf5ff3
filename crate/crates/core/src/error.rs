use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Consistency` is special: it signals that a directly computed verdict and a
/// verdict propagated along the implication chains disagree, which means a bug
/// or a tolerance failure rather than a property of the input state.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("verdict conflict on {class}: direct {direct} vs propagated {propagated}")]
    Consistency {
        class: String,
        /// JSON of the directly computed verdict, witness included.
        direct: String,
        /// Description of the propagated verdict and its source edge.
        propagated: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
