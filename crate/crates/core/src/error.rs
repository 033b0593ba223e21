use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrossError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no prime factorization")]
    ZeroFactorization,
    #[error("zero raised to a nonpositive power")]
    ZeroToNonpositive,
    #[error("factorization of {0} exceeds the supported magnitude")]
    FactorizationTooLarge(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("algebraic irrational: {0}")]
    AlgebraicIrrational(String),
    #[error("unrepresentable: {0}")]
    Unrepresentable(String),
    #[error("exponent denominator {0} exceeds the comparison limit")]
    ExponentDenominatorTooLarge(String),
    #[error("substitution does not produce a rational value: {0}")]
    NonIntegerExponent(String),
    #[error("sequential sum with more than \u{2460} addends")]
    SequentialLimitExceeded,
    #[error("sum count must be at least 1")]
    NonpositiveCount,
    #[error("geometric ratio must differ from 1")]
    UnitRatio,
    #[error("excluded count exceeds the original count or is negative")]
    NegativeCount,
    #[error("recurrence limited to {max} steps, got {got}")]
    StepLimit { max: u32, got: u32 },
    #[error("unit mismatch: {0}")]
    UnitMismatch(String),
    #[error("ordering chain violated between {0} and {1}")]
    ChainViolation(String, String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier '{name}' at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("at byte {pos}: {source}")]
    At {
        pos: usize,
        #[source]
        source: Box<GrossError>,
    },
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl GrossError {
    /// Attaches a source position, keeping the innermost one if already present.
    pub fn at(self, pos: usize) -> GrossError {
        match self {
            e @ (GrossError::At { .. }
            | GrossError::Syntax { .. }
            | GrossError::UnknownIdentifier { .. }) => e,
            other => GrossError::At {
                pos,
                source: Box::new(other),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, GrossError>;
