use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },

    #[error("vector fields live over different variable contexts")]
    ContextMismatch,

    #[error("bracket closure exceeded dimension cap {0}")]
    DimensionCapExceeded(usize),

    #[error("bracket of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),

    #[error("basis is linearly dependent")]
    DependentBasis,

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("algebra is not transitive at the origin")]
    NotTransitive,

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("not gradable: {0}")]
    NotGradable(String),

    #[error("degree {degree} is below the minimum {min}")]
    DegreeOutOfRange { degree: i64, min: i64 },

    #[error("not projectable: {0}")]
    NotProjectable(String),

    #[error("jet map has a singular linear part")]
    SingularJetMap,

    #[error("form is not closed: {0}")]
    NotClosedForm(String),

    #[error("recurrence search exceeded bound {0}")]
    BoundExceeded(usize),

    #[error("certificate is not certified: {0}")]
    NotCertified(String),

    #[error("not representable in the coefficient ring: {0}")]
    NotRepresentable(String),

    #[error("internal certificate failure: {0}")]
    InternalCertificateFailure(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by inputs violating an operation's preconditions.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotSolvable
                | Error::NotTransitive
                | Error::NotNilpotent
                | Error::NotGradable(_)
                | Error::DimensionCapExceeded(_)
                | Error::NotProjectable(_)
                | Error::DegreeOutOfRange { .. }
                | Error::ContextMismatch
                | Error::ArityMismatch { .. }
                | Error::InvalidArgument(_)
                | Error::NotCertified(_)
        )
    }
}
