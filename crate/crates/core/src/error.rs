use thiserror::Error;

use crate::algebra::AmbientMode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("mode mismatch: {0:?} vs {1:?}")]
    ModeMismatch(AmbientMode, AmbientMode),
    #[error("window mismatch between operands")]
    CapMismatch,
    #[error("product of two nonempty words is not defined in {0:?} mode")]
    IllegalProduct(AmbientMode),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("invalid groupoid: {0}")]
    Invalid(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("not a right action: {0}")]
    NotAnAction(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("operation outside the window: {0}")]
    WindowExceeded(String),
    #[error("unknown operation {0}")]
    UnknownOperation(String),
    #[error("composition not defined: {0}")]
    NotComposable(String),
    #[error("colour set is empty")]
    EmptyColourSet,
    #[error("monoid table lacks the finite-decomposition property: {0}")]
    NotFiniteDecomposition(String),
    #[error("unknown built-in operad {0}")]
    UnknownBuiltin(String),
    #[error("invalid operad data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// Schema violation in an operad spec file, located by JSON pointer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad spec file at {}: {message}", if pointer.is_empty() { "document root" } else { pointer })]
pub struct SpecError {
    pub pointer: String,
    pub message: String,
}

impl SpecError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("oracle scale exceeded: {0}")]
    OracleScaleExceeded(String),
    #[error("counit is not defined on a completed series")]
    CompletedSeriesCounit,
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
