//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A word used a symbol outside the oracle's declared alphabet.
    #[error("unknown letter '{letter}' for alphabet {{{alphabet}}}")]
    UnknownLetter { letter: char, alphabet: String },

    /// A group-spec string did not parse to a supported oracle.
    #[error("unknown group spec '{0}' (expected free:R, abelian:D, zxz2 or heisenberg)")]
    UnknownSpec(String),

    /// A generating-set word normalized to the group identity.
    #[error("generating set contains the identity (word '{word}')")]
    ContainsIdentity { word: String },

    /// A generating set is missing the inverse of one of its members.
    #[error("generating set is not symmetric: inverse of '{member}' is absent")]
    NotSymmetric { member: String },

    /// Two generating-set words normalized to the same element.
    #[error("duplicate generating-set member '{member}'")]
    DuplicateMember { member: String },

    /// The element named is not a member of the table's generating set.
    #[error("'{0}' is not a member of the generating set")]
    NotAGenerator(String),

    /// A queried element lies outside the enumerated ball.
    #[error("element '{element}' outside table radius {radius}{}",
        needed.map(|n| format!(" (needs radius >= {n})")).unwrap_or_default())]
    OutOfRadius {
        element: String,
        radius: u32,
        needed: Option<u32>,
    },

    /// An operation that excludes the identity was called on it.
    #[error("operation is undefined at the identity element")]
    IdentityElement,

    /// Enumeration stopped before the requested radius to stay within budget.
    #[error("budget exceeded at radius {reached} of {requested} ({detail})")]
    BudgetExceeded {
        reached: u32,
        requested: u32,
        detail: String,
    },

    #[error("invalid generating set: {0}")]
    InvalidGeneratingSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty input")]
    EmptyInput,

    #[error("non-positive entry ({0}, {1})")]
    NonPositiveEntry(i64, i64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A table cache file was written by an incompatible format version.
    #[error("table file format version mismatch: found '{found}', expected '{expected}'")]
    VersionMismatch { found: String, expected: String },

    /// A table cache file body does not match its recorded checksum.
    #[error("table file checksum mismatch (expected {expected:08x}, got {actual:08x})")]
    ChecksumMismatch { expected: u32, actual: u32 },

    /// A table cache file is structurally malformed.
    #[error("malformed table file: {0}")]
    MalformedTableFile(String),
}

impl Error {
    /// Stable machine-readable code, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownLetter { .. } => "UNKNOWN_LETTER",
            Error::UnknownSpec(_) => "UNKNOWN_SPEC",
            Error::ContainsIdentity { .. } => "CONTAINS_IDENTITY",
            Error::NotSymmetric { .. } => "NOT_SYMMETRIC",
            Error::DuplicateMember { .. } => "DUPLICATE_MEMBER",
            Error::NotAGenerator(_) => "NOT_A_GENERATOR",
            Error::OutOfRadius { .. } => "OUT_OF_RADIUS",
            Error::IdentityElement => "IDENTITY_ELEMENT",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            Error::InvalidGeneratingSet(_) => "INVALID_GENERATING_SET",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::EmptyInput => "EMPTY_INPUT",
            Error::NonPositiveEntry(..) => "NON_POSITIVE_ENTRY",
            Error::Io(_) => "IO_ERROR",
            Error::VersionMismatch { .. } => "VERSION_MISMATCH",
            Error::ChecksumMismatch { .. } => "CHECKSUM_MISMATCH",
            Error::MalformedTableFile(_) => "MALFORMED_TABLE_FILE",
        }
    }
}
