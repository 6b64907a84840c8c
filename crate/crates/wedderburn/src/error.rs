use thiserror::Error;

/// Errors surfaced by the decomposition pipeline and its I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands have incompatible shapes.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input violates a numerical precondition (e.g. not Hermitian,
    /// not in the algebra span).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The computed data contradicts a structural guarantee of the
    /// algorithm; indicates a tolerance breakdown, not user error.
    #[error("structural inconsistency in {stage}: {detail}")]
    Structural { stage: &'static str, detail: String },

    /// A certified quantity missed its tolerance; carries the measured
    /// residual so callers can decide whether to retry with looser settings.
    #[error("tolerance escalation in {context}: residual {residual:.3e} exceeds {allowed:.3e}")]
    Tolerance {
        context: &'static str,
        residual: f64,
        allowed: f64,
    },

    /// Requested named instance is not in the catalog.
    #[error("catalog: {0}")]
    Catalog(String),

    /// Malformed textual input (structure strings, matrix files).
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for I/O and parsing problems,
    /// 3 for structural/numerical inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) | Error::Parse(_) => 2,
            _ => 3,
        }
    }
}
