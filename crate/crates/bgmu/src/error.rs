use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names are the stable error identifiers surfaced by the CLI; they
/// must not be renamed without bumping the output schema.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular over the fraction field")]
    SingularMatrix,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("matrix does not lie in the block parabolic: {0}")]
    NotInParabolic(String),
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("parts do not form a composition of {n}: {parts:?}")]
    InvalidComposition { n: usize, parts: Vec<usize> },
    #[error("slopes are not weakly decreasing")]
    NotDecreasing,
    #[error("partial sum at a slope break is not an integer")]
    NonIntegralBreakpoint,
    #[error("blocks do not match the Levi datum")]
    BlockMismatch,
    #[error("cocharacter is not dominant")]
    NotDominant,
    #[error("vector is not constant on the blocks of the Levi datum")]
    NotLCentral,
    #[error("pairing is not an integer")]
    NonIntegralDimension,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("input bundle is semistable")]
    SemistableInput,
    #[error("rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: i64, max: usize },
    #[error("non-integral degree: rank * slope must be an integer")]
    NonIntegralDegree,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid bundle summand: {0}")]
    InvalidBundle(String),
}

impl Error {
    /// Stable machine-readable name, used verbatim in CLI error objects.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SingularMatrix => "SingularMatrix",
            Error::NotPrime(_) => "NotPrime",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotInParabolic(_) => "NotInParabolic",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InvalidComposition { .. } => "InvalidComposition",
            Error::NotDecreasing => "NotDecreasing",
            Error::NonIntegralBreakpoint => "NonIntegralBreakpoint",
            Error::BlockMismatch => "BlockMismatch",
            Error::NotDominant => "NotDominant",
            Error::NotLCentral => "NotLCentral",
            Error::NonIntegralDimension => "NonIntegralDimension",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::SemistableInput => "SemistableInput",
            Error::RankOutOfRange { .. } => "RankOutOfRange",
            Error::NonIntegralDegree => "NonIntegralDegree",
            Error::Unsupported(_) => "Unsupported",
            Error::InvalidBundle(_) => "InvalidBundle",
        }
    }
}
