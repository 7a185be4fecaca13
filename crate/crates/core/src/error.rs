use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Ids carried inside error messages are the 1-based ids of the external
/// formats, so a message can be matched against the offending input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("M-element {0} is not associated with any N-element")]
    Coverage(usize),
    #[error("{0}")]
    Weight(String),
    #[error("need 1 <= machines < |N|, got machines={machines}, |N|={n_count}")]
    MachineCount { machines: usize, n_count: usize },
    #[error("{0}")]
    Id(String),
    #[error("{0}")]
    Partition(String),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Variant(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Part3Format(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected}, found {found}")]
    DigestMismatch { expected: String, found: String },
    #[error("{0}")]
    Parameter(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            msg: msg.into(),
        }
    }

    /// Short stable name of the variant, used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Coverage(_) => "CoverageError",
            Error::Weight(_) => "WeightError",
            Error::MachineCount { .. } => "MachineCountError",
            Error::Id(_) => "IdError",
            Error::Partition(_) => "PartitionError",
            Error::Overflow(_) => "OverflowError",
            Error::Variant(_) => "VariantError",
            Error::InternalInvariant(_) => "InternalInvariantError",
            Error::Precondition(_) => "PreconditionError",
            Error::Part3Format(_) => "Part3FormatError",
            Error::Syntax { .. } => "SyntaxError",
            Error::DigestMismatch { .. } => "DigestMismatch",
            Error::Parameter(_) => "ParameterError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
