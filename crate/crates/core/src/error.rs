use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// The CLI surfaces [`Error::code`] as a machine-readable tag, so variant
/// names are part of the external interface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus reduction is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("ring parameters out of range: {0}")]
    RingTooLarge(String),
    #[error("operands belong to different rings")]
    SpecMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("polynomial of degree {degree} does not fit in length {n}")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("operation requires a field (t = 1)")]
    FieldRequired,
    #[error("polynomial is not regular")]
    NotRegular,
    #[error("factors are not pairwise coprime")]
    NotCoprime,
    #[error("product of factors does not match the target")]
    ProductMismatch,
    #[error("{q} and {m} are not coprime")]
    NotCoprimeModulus { q: u64, m: u64 },
    #[error("length {n} is divisible by the characteristic {p}")]
    RepeatedRootLength { n: usize, p: u64 },
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
    #[error("reciprocal lands in a different ambient ring (lambda^2 != 1)")]
    AmbientMismatch,
    #[error("expected length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("exponent {value} outside [0, {t}]")]
    ExponentRange { value: u32, t: u32 },
    #[error("lambda must satisfy lambda^2 = 1")]
    LambdaNotPlusMinusOne,
    #[error("lambda does not reduce to the source ambient's constant")]
    LambdaResidueMismatch,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("instance too large for exhaustive search ({0} vectors)")]
    TooLarge(u128),
    #[error("codes have different ring or length")]
    SizeMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable snake_case identifier for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::RingTooLarge(_) => "ring_too_large",
            Error::SpecMismatch => "spec_mismatch",
            Error::NotAUnit => "not_a_unit",
            Error::NonMonicDivisor => "non_monic_divisor",
            Error::DegreeTooLarge { .. } => "degree_too_large",
            Error::FieldRequired => "field_required",
            Error::NotRegular => "not_regular",
            Error::NotCoprime => "not_coprime",
            Error::ProductMismatch => "product_mismatch",
            Error::NotCoprimeModulus { .. } => "not_coprime_modulus",
            Error::RepeatedRootLength { .. } => "repeated_root_length",
            Error::VerificationFailed(_) => "verification_failed",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::ExponentRange { .. } => "exponent_range",
            Error::LambdaNotPlusMinusOne => "lambda_not_plus_minus_one",
            Error::LambdaResidueMismatch => "lambda_residue_mismatch",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::TooLarge(_) => "too_large",
            Error::SizeMismatch => "size_mismatch",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
