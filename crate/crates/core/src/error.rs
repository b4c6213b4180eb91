use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("colon by zero ideal")]
    ColonByZero,
    #[error("{0} is undefined for the zero ideal")]
    ZeroIdeal(&'static str),
    #[error("infinite length")]
    InfiniteLength,
    #[error("submodule is not contained in the ideal")]
    NotContained,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid lex spec: {0}")]
    InvalidLexSpec(String),
    #[error("cannot parse monomial {0:?}")]
    BadMonomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("ideal is not m-primary")]
    NotMPrimary,
    #[error("horizon must be at least 3, got {0}")]
    HorizonTooSmall(u32),
    #[error("Hilbert coefficients inconclusive up to horizon {horizon}")]
    Inconclusive { horizon: u32 },
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DepthError {
    #[error("depth probes need a nonzero proper ideal")]
    TrivialIdeal,
    #[error("lemma applies to lex-segment ideals")]
    LemmaNeedsLex,
    #[error("not lex-segment")]
    NotLexSegment,
    #[error("m-primary factor expected")]
    NotMPrimary,
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{0} is not a prime below 2^32")]
    BadPrime(u64),
    #[error("ideal is not m-primary")]
    NotMPrimary,
    #[error("no full-rank coefficient pair after {0} draws")]
    Degenerate(u32),
    #[error("J*I^{m} did not reach M^T within the colength bound {bound}")]
    NoPlateau { m: u32, bound: u64 },
    #[error("trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("semigroup needs positive generators")]
    EmptyGenerators,
    #[error("semigroup generators must have gcd 1, got {0}")]
    NotNumerical(u64),
    #[error("generator {0} is not in the semigroup")]
    NotInSemigroup(u64),
    #[error("ideals live over different semigroups")]
    SemigroupMismatch,
    #[error("colon by the empty ideal")]
    ColonByEmpty,
    #[error("semigroup ideal needs at least one generator")]
    EmptyIdeal,
    #[error("submodule is not contained in the ideal")]
    NotContained,
    #[error("Valabrega-Valla check needs a principal J contained in I")]
    NotPrincipalSubideal,
}
