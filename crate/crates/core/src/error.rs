use thiserror::Error;

/// Errors raised by the group, module and lattice engines.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("group order {order} exceeds the configured cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("permutation degree {degree} exceeds the maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("bad semidirect action: need gcd({a},{m}) = 1 and {a}^{n} = 1 mod {m}")]
    BadAction { m: u64, n: u64, a: u64 },
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {p} divides m = {m}")]
    CharacteristicDividesM { p: u64, m: u64 },
    #[error("modulus is not irreducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("field of order {q} is larger than the supported maximum {max}")]
    FieldTooLarge { q: u64, max: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("module dimension {dim} exceeds the configured cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error("module has a summand without trivial source: {0}")]
    NotTrivialSource(String),
    #[error("summand does not match any basis element: {0}")]
    UnknownSummand(String),
    #[error("not a minimal counterexample: {0}")]
    NotMinimalCounterexample(String),
    #[error("not k-elementary: {0}")]
    NotKElementary(String),
    #[error("identity membership and lattice fullness disagree: {0}")]
    InconsistentIdealCheck(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable variant name, used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::NotNormal => "NotNormal",
            Error::BadAction { .. } => "BadAction",
            Error::Parse { .. } => "Parse",
            Error::NotPrime(_) => "NotPrime",
            Error::CharacteristicDividesM { .. } => "CharacteristicDividesM",
            Error::ReducibleModulus { .. } => "ReducibleModulus",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DimensionCapExceeded { .. } => "DimensionCapExceeded",
            Error::DecompositionFailed(_) => "DecompositionFailed",
            Error::NotIndecomposable => "NotIndecomposable",
            Error::NotTrivialSource(_) => "NotTrivialSource",
            Error::UnknownSummand(_) => "UnknownSummand",
            Error::NotMinimalCounterexample(_) => "NotMinimalCounterexample",
            Error::NotKElementary(_) => "NotKElementary",
            Error::InconsistentIdealCheck(_) => "InconsistentIdealCheck",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::Hypothesis(_) => "Hypothesis",
            Error::CertificateFailed(_) => "CertificateFailed",
            Error::Io(_) => "Io",
        }
    }
}
