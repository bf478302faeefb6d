use thiserror::Error;

use crate::framework::{ArgumentId, Attack};

/// Integrity violations raised while building a [`crate::Framework`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameworkError {
    #[error("invalid argument id {0:?}")]
    InvalidId(String),
    #[error("annotation text may be empty only when a url is given")]
    EmptyAnnotation,
    #[error("annotation url {0:?} is not an absolute URL")]
    InvalidUrl(String),
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(ArgumentId),
    #[error("duplicate attack `{0}`")]
    DuplicateAttack(Attack),
    #[error("undeclared argument `{0}`")]
    UndeclaredArgument(ArgumentId),
    #[error("attack `{0}` is not part of the framework")]
    UnknownAttack(Attack),
    #[error("framework exceeds {0} arguments")]
    TooManyArguments(usize),
    #[error("framework exceeds {0} attacks")]
    TooManyAttacks(usize),
}

impl FrameworkError {
    /// True for the size guardrail violations.
    pub fn is_too_large(&self) -> bool {
        matches!(
            self,
            FrameworkError::TooManyArguments(_) | FrameworkError::TooManyAttacks(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("missing `#` separator line")]
    MissingSeparator,
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// A parse failure, positioned where the input allows it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn at(line: usize, column: usize, kind: impl Into<ParseErrorKind>) -> Self {
        ParseError {
            line: Some(line),
            column: Some(column),
            kind: kind.into(),
        }
    }

    pub(crate) fn line(line: usize, kind: impl Into<ParseErrorKind>) -> Self {
        ParseError {
            line: Some(line),
            column: None,
            kind: kind.into(),
        }
    }

    pub(crate) fn unpositioned(kind: impl Into<ParseErrorKind>) -> Self {
        ParseError {
            line: None,
            column: None,
            kind: kind.into(),
        }
    }

    pub fn is_too_large(&self) -> bool {
        matches!(&self.kind, ParseErrorKind::Framework(f) if f.is_too_large())
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.kind),
            (Some(l), None) => write!(f, "line {l}: {}", self.kind),
            _ => write!(f, "{}", self.kind),
        }
    }
}

/// Errors raised by the semantic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("labelling covers {got} arguments, framework has {expected}")]
    LabellingSize { expected: usize, got: usize },
    #[error("labelling is not legal at argument `{0}`")]
    IllegalLabelling(ArgumentId),
    #[error("labelling is legal but not the grounded labelling (argument `{0}` has no well-founded derivation)")]
    NotGrounded(ArgumentId),
    #[error("lengths are inconsistent with the labelling at argument `{0}`")]
    InconsistentLengths(ArgumentId),
    #[error("solution index {index} out of range ({count} solutions)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("target labelling is not stable (argument `{0}` is undecided or illegal)")]
    TargetNotStable(ArgumentId),
    #[error("target labelling disagrees with the grounded labelling at argument `{0}`")]
    TargetDisagrees(ArgumentId),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
    #[error("search cancelled")]
    Cancelled,
}
