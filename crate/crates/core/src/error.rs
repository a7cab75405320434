//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the arithmetic, polynomial, blow-up, splitting and
/// scenario layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("variable table mismatch")]
    VarTableMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("non-monomial Puiseux substitution")]
    NonMonomialSubstitution,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("fractional exponent where an integer exponent is required: {0}")]
    FractionalExponent(String),

    #[error("negative exponent produced: {0}")]
    NegativeExponent(String),

    #[error("root not in coefficient field: {0}")]
    RootNotInField(String),

    #[error("not a perfect power: {0}")]
    NotAPower(String),

    #[error("centre must have codimension at least 2, got {0} variable(s)")]
    CentreTooSmall(usize),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("Phi not a square factor")]
    PhiNotSquareFactor,

    #[error("Psi vanishes off the exceptional divisor")]
    PsiShape,

    #[error("does not split over the v-cover to order {0}")]
    DoesNotSplit(String),

    #[error("not a Z_k root system: {0}")]
    NotRootSystem(String),

    #[error("not closed under the deck action")]
    NotClosedUnderDeck,

    #[error("denominator growth exceeds linear bound")]
    DenominatorGrowth,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unclassified form: {0}")]
    Unclassified(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("at chart `{path}`: {source}")]
    AtChart { path: String, source: Box<Error> },

    #[error("{file}: {message}")]
    Load { file: String, message: String },
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    pub fn at_chart(path: &str, err: Error) -> Self {
        Error::AtChart {
            path: path.to_string(),
            source: Box::new(err),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
