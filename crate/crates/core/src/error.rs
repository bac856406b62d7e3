//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input: syntax, malformed maps, unsafe rules.
    Input,
    /// A configured stage, cardinality or enumeration budget was exhausted.
    Budget,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("function is not total: no image for `{element}`")]
    NotTotal { element: String },

    #[error("value `{value}` assigned to `{element}` lies outside the codomain")]
    OutsideCodomain { element: String, value: String },

    #[error("`{element}` is not an element of the domain")]
    NotInDomain { element: String },

    #[error("conflicting assignments for `{element}`: `{first}` and `{second}`")]
    ConflictingAssignment {
        element: String,
        first: String,
        second: String,
    },

    #[error("not an isomorphism: {0}")]
    NotAnIso(String),

    #[error("functor mismatch: expected `{expected}`, found `{found}`")]
    FunctorMismatch { expected: String, found: String },

    #[error("element `{element}` does not have the shape of `{functor}`")]
    MalformedElement { element: String, functor: String },

    #[error("stage {stage} would hold {size} elements, above the cap of {cap}")]
    StageExplosion {
        stage: usize,
        size: String,
        cap: usize,
    },

    #[error("chain did not converge within {max_stage} stages")]
    NoConvergence { max_stage: usize },

    #[error("link {stage} is not a bijection; the chain has not converged there")]
    NotConverged { stage: usize },

    #[error("enumeration of {count} candidates exceeds the cap of {cap}")]
    EnumerationTooLarge { count: String, cap: usize },

    #[error("malformed term `{term}`: {reason}")]
    MalformedTerm { term: String, reason: String },

    #[error("wrapping `{element}` exceeds the depth bound {depth}")]
    DepthOverflow { element: String, depth: usize },

    #[error("operator is not ascending at iteration {iteration}: lost {lost}")]
    NotAscending { iteration: usize, lost: String },

    #[error("operator produced `{element}` outside the lattice universe")]
    OutsideUniverse { element: String },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsafe rule `{rule}`: head variable {variable} does not occur in the body")]
    UnsafeRule { rule: String, variable: String },

    #[error("predicate {predicate} used with arity {found}, previously {expected}")]
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },

    #[error("malformed algebra: {message}")]
    AlgebraMalformed { message: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::StageExplosion { .. }
            | Error::NoConvergence { .. }
            | Error::EnumerationTooLarge { .. }
            | Error::DepthOverflow { .. } => ErrorClass::Budget,
            _ => ErrorClass::Input,
        }
    }

    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
