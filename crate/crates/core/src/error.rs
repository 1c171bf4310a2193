use thiserror::Error;

/// Errors raised by the exact-arithmetic and arithmetic-geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {0} exceeds the supported bound")]
    ExponentOverflow(i64),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("variable `{0}` has no assigned value")]
    MissingVariable(String),
    #[error("negative power of a multi-term value substituted for `{0}`")]
    NonMonomialInverse(String),
    #[error("character value is not a root of unity of the right order")]
    InvalidCharacter,
    #[error("no character of (O/f)^x restricts to the inverse identity on units")]
    UnitObstruction,
    #[error("class number {0} > 1: values on non-principal ideals need roots outside the value field")]
    RootNotInValueField(u64),
    #[error("half-integral power of l survives in the Frobenius polynomial")]
    HalfIntegerLeak,
    #[error("matrix is not in the expected group: {0}")]
    NotInGroup(String),
    #[error("ideal is not coprime to the modulus")]
    NotCoprime,
    #[error("cocharacter pair violates the cone conditions")]
    ConeViolation,
    #[error("membership test needs precision l^{0}, above the configured bound")]
    PrecisionOverflow(u32),
    #[error("no candidate double coset within the exponent bound")]
    NotFoundWithinBound,
    #[error("{0} candidate double cosets contain the element")]
    AmbiguousReduction(usize),
    #[error("|D| = {0} exceeds the class group bound")]
    DiscriminantBoundExceeded(i64),
    #[error("the conductor does not divide the modulus")]
    ModulusMismatch,
    #[error("{0} is not split in K")]
    NotSplit(u64),
    #[error("modulus condition violated: {0}")]
    ModulusViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
