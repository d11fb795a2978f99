use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Each variant has a stable upper-case code (see [`Error::code`]) that the
/// CLI prints alongside the message.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator label `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid label `{0}`")]
    BadLabel(String),

    #[error("invalid Coxeter matrix entry: {0}")]
    BadEntry(String),

    #[error("search over {generators} generators exceeds the cap of {cap}")]
    SearchCapExceeded { generators: usize, cap: usize },

    #[error("subset is not irreducible")]
    NotIrreducible,

    #[error("subset is not spherical")]
    NotSpherical,

    #[error("base type {0} is not eligible for this operation")]
    IneligibleType(String),

    #[error("word of length {len} exceeds the cap of {cap}")]
    WordTooLong { len: usize, cap: usize },

    #[error("braid-class search gave up after visiting {0} words")]
    BraidSearchExhausted(usize),

    #[error("enumeration exceeded the cap of {0} elements")]
    EnumerationCap(usize),

    #[error("invalid twist: {0}")]
    TwistInvalid(String),

    #[error("normalization precondition failed: {0}")]
    NormalizePrecondition(String),

    #[error("blow-down precondition failed: {0}")]
    BlowDownPrecondition(String),

    #[error("blow-up precondition failed: {0}")]
    BlowUpPrecondition(String),

    #[error("certificate rejected: {0}")]
    CertificationFailed(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `coxeter v1` header")]
    MissingHeader,
    #[error("missing `gen` line")]
    MissingGenerators,
    #[error("more than one `gen` line")]
    RepeatedGenerators,
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("bad label `{0}`")]
    BadLabel(String),
    #[error("bad edge order `{0}` (expected an integer >= 2)")]
    BadM(String),
    #[error("self edge on `{0}`")]
    SelfEdge(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed line: {0}")]
    Malformed(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownGenerator(_) => "UNKNOWN_GENERATOR",
            Error::DuplicateGenerator(_) => "DUPLICATE_GENERATOR",
            Error::BadLabel(_) => "BAD_LABEL",
            Error::BadEntry(_) => "BAD_M",
            Error::SearchCapExceeded { .. } => "SEARCH_CAP_EXCEEDED",
            Error::NotIrreducible => "NOT_IRREDUCIBLE",
            Error::NotSpherical => "NOT_SPHERICAL",
            Error::IneligibleType(_) => "INELIGIBLE_TYPE",
            Error::WordTooLong { .. } => "WORD_TOO_LONG",
            Error::BraidSearchExhausted(_) => "BRAID_SEARCH_EXHAUSTED",
            Error::EnumerationCap(_) => "ENUMERATION_CAP",
            Error::TwistInvalid(_) => "TWIST_INVALID",
            Error::NormalizePrecondition(_) => "NORMALIZE_PRECONDITION",
            Error::BlowDownPrecondition(_) => "BLOW_DOWN_PRECONDITION",
            Error::BlowUpPrecondition(_) => "BLOW_UP_PRECONDITION",
            Error::CertificationFailed(_) => "CERTIFICATION_FAILED",
            Error::InternalInconsistency(_) => "INTERNAL_INCONSISTENCY",
            Error::Parse { kind, .. } => match kind {
                ParseErrorKind::DuplicateEdge(..) => "DUPLICATE_EDGE",
                ParseErrorKind::BadLabel(_) => "BAD_LABEL",
                ParseErrorKind::BadM(_) => "BAD_M",
                ParseErrorKind::SelfEdge(_) => "SELF_EDGE",
                _ => "PARSE_ERROR",
            },
            Error::Io(_) => "IO",
            Error::Json(_) => "JSON",
        }
    }

    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CertificationFailed(_) | Error::InternalInconsistency(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
