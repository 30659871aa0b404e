use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus is reducible over GF({p}) or has the wrong shape: {reason}")]
    ReducibleModulus { p: u32, reason: String },
    #[error("field of order {0} exceeds the 2^16 limit")]
    FieldTooLarge(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("element {value} is outside the field of order {q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("second subspace is not contained in the first")]
    NotASubspacePair,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("enumeration of {size} elements exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },
    #[error("{0} positions is too many for exhaustive subset enumeration")]
    TooManySubsets(usize),
    #[error("subspace is not self-orthogonal under the symplectic form")]
    NotSelfOrthogonal,
    #[error("nesting violated: {0}")]
    NestingViolated(String),
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("bad secret representatives: {0}")]
    BadSecretReps(String),
    #[error("strong security requires an even secret length, got k = {0}")]
    OddK(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("evaluation points must be distinct")]
    DuplicateAlpha,
    #[error("degree bound {ktilde} exceeds code length {n}")]
    DegreeTooLarge { ktilde: usize, n: usize },
    #[error("parity requirement violated: {0}")]
    BadParity(String),
    #[error("evaluation point {0} of the secret prefix is zero")]
    AlphaZeroInPrefix(usize),
    #[error("|B'| = {size} exceeds k/2 = {half}")]
    BPrimeTooLarge { size: usize, half: usize },
    #[error("field order {0} is odd; the insecure construction needs n = q even")]
    OddQ(u32),
    #[error("puncturing produced a degenerate scheme: {0}")]
    DegeneratePuncture(String),
    #[error("{participants} participants exceed the q - k = {limit} limit")]
    TooManyParticipants { participants: usize, limit: usize },
    #[error("quantum oracle supports prime fields only")]
    NonPrimeField,
    #[error("state space too large: {0}")]
    TooLarge(String),
    #[error("eigenspace projection vanished")]
    ProjectionVanished,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
