use std::fmt;

use thiserror::Error;

/// Location-tagged failure while reading an `.itab` document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownAttribute(String),
    ValueOutsideDomain { attr: String, value: String },
    DuplicateObject(String),
    SingletonPartial { attr: String },
    SelfReference { attr: String },
    MissingDomain { attr: String },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownAttribute(a) => write!(f, "unknown attribute `{a}`"),
            ParseErrorKind::ValueOutsideDomain { attr, value } => {
                write!(f, "value `{value}` is not in the domain of `{attr}`")
            }
            ParseErrorKind::DuplicateObject(o) => write!(f, "duplicate object id `{o}`"),
            ParseErrorKind::SingletonPartial { attr } => write!(
                f,
                "partially-known value on `{attr}` must list at least two distinct values"
            ),
            ParseErrorKind::SelfReference { attr } => {
                write!(f, "class-specific value on `{attr}` cannot reference itself")
            }
            ParseErrorKind::MissingDomain { attr } => write!(
                f,
                "attribute `{attr}` uses `*` but has no `@domain` declaration"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("object `{object}`: class-specific value on `{attr}` refers to `{reference}`, which is not a known value")]
    UnresolvedReference {
        object: String,
        attr: String,
        reference: String,
    },

    #[error("object `{object}`: class-specific value on `{attr}` has no peer with a matching `{reference}` value and a known `{attr}` value")]
    EmptyResolution {
        object: String,
        attr: String,
        reference: String,
    },

    #[error("{what}: {count} exceeds the configured limit of {limit}")]
    TooLarge {
        what: &'static str,
        count: String,
        limit: u64,
    },

    #[error("operation requires a complete table")]
    IncompleteTable,

    #[error("row of object `{0}` is not complete")]
    IncompleteRow(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("attribute subset must not be empty")]
    EmptyAttributeSet,

    #[error("t-norm requires at least one operand")]
    EmptyTNorm,

    #[error("degree {0} lies outside [0, 1]")]
    DegreeOutOfRange(String),

    #[error("cannot parse degree `{0}`")]
    InvalidDegree(String),

    #[error("{tnorm} t-norm cannot be paired with the {implication} implication")]
    MixedPairing {
        tnorm: &'static str,
        implication: &'static str,
    },

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
