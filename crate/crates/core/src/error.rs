use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched quadratic fields: sqrt({left}) vs sqrt({right})")]
    MismatchedField { left: i64, right: i64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero raised to a negative power")]
    ZeroToNegativePower,

    #[error("domain error in {context}: {message}")]
    Domain {
        context: &'static str,
        message: String,
    },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("degenerate moment functional: leading principal determinant of order {order} vanishes")]
    DegenerateMoments { order: usize },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("invalid binding for identity `{id}`: {message}")]
    InvalidBinding { id: String, message: String },

    #[error("underdetermined ansatz: {0}")]
    UnderdeterminedAnsatz(String),

    #[error("bound {bound} exceeds the maximum {max} for {context}")]
    BoundExceeded {
        context: &'static str,
        bound: u64,
        max: u64,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn domain(context: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            context,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
