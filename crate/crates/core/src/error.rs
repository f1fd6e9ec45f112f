use thiserror::Error;

use crate::polyalgebra::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

/// How a failure should be treated by callers (and mapped to CLI exit codes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: malformed text, precondition violated, wrong kind of germ.
    Input,
    /// Something that must never happen: a failed identity, a theorem
    /// violation or a broken internal invariant.
    Defect,
    /// Well-formed input outside the supported rational setting.
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid germ: {0}")]
    InvalidGerm(String),
    #[error("term {term} is not divisible by x^{a}*y^{b}")]
    NonDivisible { term: String, a: u32, b: u32 },
    #[error("resultant needs positive degree in y for both polynomials")]
    DegenerateResultant,
    #[error("invalid contact type ({m},{n}): need n > m >= 1")]
    InvalidContactType { m: u64, n: u64 },
    #[error("quotient prefixes differ before h = {h}")]
    KPrefixMismatch { h: usize },
    #[error("step index h = {h} outside 1..={max}")]
    StepOutOfRange { h: usize, max: usize },
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("identity failure: {0}")]
    IdentityFailure(String),
    #[error("germ does not pass through the origin")]
    NotThroughOrigin,
    #[error("tangent cone is not a pure power of a linear form")]
    NotPurePower,
    #[error("tangent cone is a power of an irrational linear form")]
    IrrationalTangent,
    #[error("the line is a component of the curve (infinite contact)")]
    InfiniteContact,
    #[error("germ is not reduced at the origin")]
    NonReduced,
    #[error("germ is not unibranch at the origin (several points over it at stage {stage})")]
    NotUnibranch { stage: usize },
    #[error("an infinitely near point is not rational")]
    IrrationalInfinitelyNearPoint,
    #[error("no admissible shear found within {cap} attempts")]
    ShearExhausted { cap: u32 },
    #[error("blow-up recursion exceeded depth {depth}")]
    RecursionLimit { depth: usize },
    #[error("step ({j},{i}): observed ({obs_m},{obs_n}) but predicted ({pred_m},{pred_n})")]
    PredictionMismatch {
        j: usize,
        i: usize,
        obs_m: u64,
        obs_n: u64,
        pred_m: u64,
        pred_n: u64,
    },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("degree {degree} is below the required {required}")]
    DegreeTooSmall { degree: u64, required: u64 },
    #[error("contact types ({m},{n}) and ({m2},{n2}) are not equivalent")]
    NotEquivalent { m: u64, n: u64, m2: u64, n2: u64 },
    #[error("the two germs share a component through the origin")]
    CommonComponent,
    #[error("invalid format: {0}")]
    InvalidFormat(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(e) => e.code(),
            Error::InvalidGerm(_) => "INVALID_GERM",
            Error::NonDivisible { .. } => "NON_DIVISIBLE",
            Error::DegenerateResultant => "DEGENERATE_RESULTANT",
            Error::InvalidContactType { .. } => "INVALID_CONTACT_TYPE",
            Error::KPrefixMismatch { .. } => "K_PREFIX_MISMATCH",
            Error::StepOutOfRange { .. } => "STEP_OUT_OF_RANGE",
            Error::InternalConsistency(_) => "INTERNAL_CONSISTENCY",
            Error::IdentityFailure(_) => "IDENTITY_FAILURE",
            Error::NotThroughOrigin => "NOT_THROUGH_ORIGIN",
            Error::NotPurePower => "NOT_PURE_POWER",
            Error::IrrationalTangent => "IRRATIONAL_TANGENT",
            Error::InfiniteContact => "INFINITE_CONTACT",
            Error::NonReduced => "NON_REDUCED",
            Error::NotUnibranch { .. } => "NOT_UNIBRANCH",
            Error::IrrationalInfinitelyNearPoint => "IRRATIONAL_INFINITELY_NEAR_POINT",
            Error::ShearExhausted { .. } => "SHEAR_EXHAUSTED",
            Error::RecursionLimit { .. } => "RECURSION_LIMIT",
            Error::PredictionMismatch { .. } => "PREDICTION_MISMATCH",
            Error::TheoremViolation(_) => "THEOREM_VIOLATION",
            Error::DegreeTooSmall { .. } => "DEGREE_TOO_SMALL",
            Error::NotEquivalent { .. } => "NOT_EQUIVALENT",
            Error::CommonComponent => "COMMON_COMPONENT",
            Error::InvalidFormat(_) => "INVALID_FORMAT",
            Error::Json(_) => "MALFORMED_JSON",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InternalConsistency(_)
            | Error::IdentityFailure(_)
            | Error::PredictionMismatch { .. }
            | Error::TheoremViolation(_) => ErrorKind::Defect,
            Error::IrrationalTangent
            | Error::IrrationalInfinitelyNearPoint
            | Error::ShearExhausted { .. }
            | Error::RecursionLimit { .. } => ErrorKind::Unsupported,
            _ => ErrorKind::Input,
        }
    }
}
