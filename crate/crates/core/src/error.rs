use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad class of an [`Error`], used for structured CLI output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Validation,
    UnsupportedSemantics,
    ReferenceNotALabelling,
}

impl ErrorCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::Parse => "parse",
            ErrorCategory::Validation => "validation",
            ErrorCategory::UnsupportedSemantics => "unsupported-semantics",
            ErrorCategory::ReferenceNotALabelling => "reference-not-a-labelling",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("labelling covers {found} arguments but the framework has {expected}")]
    FrameworkMismatch { expected: usize, found: usize },
    #[error("weight table is incomplete: {0}")]
    IncompleteWeightTable(String),
    #[error("semantics `{0}` is not supported here: explanations need a multiple-status semantics")]
    UnsupportedSemantics(String),
    #[error("no ASP encoding available for semantics `{0}` (only the stable encoding P_st is provided)")]
    UnsupportedEncoding(String),
    #[error("the reference labelling is not a {0} labelling of the framework")]
    ReferenceNotALabelling(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse { .. } => ErrorCategory::Parse,
            Error::UnsupportedSemantics(_) | Error::UnsupportedEncoding(_) => {
                ErrorCategory::UnsupportedSemantics
            }
            Error::ReferenceNotALabelling(_) => ErrorCategory::ReferenceNotALabelling,
            Error::UnknownArgument(_)
            | Error::InvalidArgument(_)
            | Error::FrameworkMismatch { .. }
            | Error::IncompleteWeightTable(_) => ErrorCategory::Validation,
        }
    }
}
