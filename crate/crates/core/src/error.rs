use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants named `InternalInconsistency`, `TestsDisagree`, `SignMismatch` and
/// `DimensionMismatch` are guards: two independent computations disagreed,
/// which means a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generators must be positive integers, got {0}")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {gcd}, expected 1")]
    GcdNotOne { gcd: u64 },
    #[error("{value} is not an element of the semigroup")]
    NotInSemigroup { value: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("precision exhausted: needed exponents below {needed}, have {available}")]
    PrecisionExhausted { needed: i64, available: i64 },
    #[error("the zero ideal has no value set")]
    ZeroIdeal,
    #[error("value set of the first ideal is not contained in the second")]
    NotContained,
    #[error("quotient has infinite colength: ideal is not contained in the ring")]
    InfiniteColength,
    #[error("quotient by the unit ideal is the zero ring")]
    UnitIdeal,
    #[error("canonicity tests disagree: {0}")]
    TestsDisagree(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("semigroup must have exactly 3 minimal generators, has {0}")]
    NotThreeGenerated(usize),
    #[error("semigroup is a complete intersection; no Hilbert-Burch matrix")]
    CompleteIntersectionInput,
    #[error("Pfaffian sign mismatch: {0}")]
    SignMismatch(String),
    #[error("Pfaffian generators map to zero; the ideal is not primary to the maximal ideal")]
    NotPrimary,
    #[error("ideal is not contained in m^{power}")]
    ContainmentFailed { power: u32 },
    #[error("resulting ideal is not canonical")]
    NotCanonical,
    #[error("skew entry {entry} has order {order}, below the postulation number {pn}")]
    OrderTooLow { entry: String, order: u32, pn: u32 },
    #[error("polynomials live in {left} and {right} variables")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("quotient not of finite colength up to degree {cap}; partial Hilbert function {partial_hf:?}")]
    NotFiniteColength { cap: u32, partial_hf: Vec<u64> },
    #[error("quotient is not Gorenstein (socle dimension {socle_dim})")]
    NotGorenstein { socle_dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, used by the CLI when reporting domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "EmptyGenerators",
            Error::NonPositiveGenerator(_) => "NonPositiveGenerator",
            Error::GcdNotOne { .. } => "GcdNotOne",
            Error::NotInSemigroup { .. } => "NotInSemigroup",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::NotContained => "NotContained",
            Error::InfiniteColength => "InfiniteColength",
            Error::UnitIdeal => "UnitIdeal",
            Error::TestsDisagree(_) => "TestsDisagree",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NotThreeGenerated(_) => "NotThreeGenerated",
            Error::CompleteIntersectionInput => "CompleteIntersectionInput",
            Error::SignMismatch(_) => "SignMismatch",
            Error::NotPrimary => "NotPrimary",
            Error::ContainmentFailed { .. } => "ContainmentFailed",
            Error::NotCanonical => "NotCanonical",
            Error::OrderTooLow { .. } => "OrderTooLow",
            Error::VariableCountMismatch { .. } => "VariableCountMismatch",
            Error::NotFiniteColength { .. } => "NotFiniteColength",
            Error::NotGorenstein { .. } => "NotGorenstein",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
