use thiserror::Error;

use crate::exactfield::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero is not a valid input here")]
    ZeroInput,
    #[error("{0} is not an odd prime")]
    InvalidCharacteristic(u64),
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("first subspace is not contained in the second")]
    NotASubspace,
    #[error("linear map is singular")]
    SingularMap,

    #[error("form is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("matrix is not an automorphism of the algebra")]
    NotAutomorphism,

    #[error("parametrized basis has identically zero determinant")]
    SingularBasis,
    #[error("rational function has a pole at the evaluation point")]
    Pole,

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("catalog entry {entry} needs parameter {param:?}")]
    MissingParam { entry: String, param: String },

    #[error("search space exceeds the budget of {budget} candidates")]
    SearchSpaceTooLarge { budget: u64 },
    #[error("{0}")]
    Unsupported(String),

    #[error("invalid input at {location}: {reason}")]
    Input { location: String, reason: String },
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn input(location: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Input {
            location: location.into(),
            reason: reason.into(),
        }
    }
}
