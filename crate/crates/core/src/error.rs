use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code (see [`Error::code`]),
/// which the command-line front end prints in its error JSON.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("square matrix required, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("characteristic polynomial does not split over the Gaussian rationals ({found} of {degree} roots found)")]
    IncompleteFactorization { found: usize, degree: usize },

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("rule conflict on {kind}: rule {rule} derived {derived}, existing value {existing}")]
    RuleConflict {
        kind: String,
        rule: String,
        derived: String,
        existing: String,
    },

    #[error("inclusion violated: {0}")]
    InclusionViolated(String),

    #[error("missing spectra: {0}")]
    MissingKinds(String),

    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable error code string.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonSquare { .. } => "NonSquare",
            Error::Singular => "Singular",
            Error::IncompleteFactorization { .. } => "IncompleteFactorization",
            Error::UnsupportedConfiguration(_) => "UnsupportedConfiguration",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::RuleConflict { .. } => "RuleConflict",
            Error::InclusionViolated(_) => "InclusionViolated",
            Error::MissingKinds(_) => "MissingKinds",
            Error::InconsistentProfile(_) => "InconsistentProfile",
            Error::Parse(_) => "ParseError",
            Error::UnknownEntry(_) => "UnknownEntry",
            Error::Json(_) => "MalformedJson",
            Error::Io(_) => "IoError",
        }
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedConfiguration(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
