use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variant names double as the machine-readable `"error"` tag emitted by the
/// command-line front end, so they are kept stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (p must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("polynomial must have positive degree")]
    ConstantPolynomial,
    #[error("operation needs a finite field")]
    NotFiniteField,
    #[error("cannot factor {poly} over Q: {reason}")]
    UnsupportedRationalFactorization { poly: String, reason: String },
    #[error("cannot decide Q[x]/({left}) = Q[x]/({right}): {reason}")]
    UnsupportedRationalIsoTest {
        left: String,
        right: String,
        reason: String,
    },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("{0} is not a maximal reducible elementary divisor")]
    NotMaximalReducible(String),
    #[error("power-index set is empty")]
    EmptySet,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("multiplication table is not associative: {0}")]
    NotAssociative(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("no (x-1)-power divisor of prime-power exponent: {0}")]
    NotPermutationSpectrum(String),
    #[error("{0} divides no x^l - 1 for the given cycle type")]
    NoDividedCycle(String),
    #[error("set is not made of powers of {p}: {set:?}")]
    NotPPowers { p: u64, set: Vec<usize> },
    #[error("S = J(T) with S = {s:?}, T = {t:?} falls outside the p-power classification")]
    Unclassified { s: Vec<usize>, t: Vec<usize> },
    #[error("matrix size {n} exceeds the cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("generator exponents must contain the Loewy length {0}")]
    MissingTopExponent(usize),
    #[error("M({0}) is projective and has zero syzygy")]
    ProjectiveInput(usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable tag naming the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::ModulusTooLarge(_) => "ModulusTooLarge",
            Error::InvalidScalar(_) => "InvalidScalar",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotFiniteField => "NotFiniteField",
            Error::UnsupportedRationalFactorization { .. } => "UnsupportedRationalFactorization",
            Error::UnsupportedRationalIsoTest { .. } => "UnsupportedRationalIsoTest",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::NotMaximalReducible(_) => "NotMaximalReducible",
            Error::EmptySet => "EmptySet",
            Error::InvalidCertificate(_) => "InvalidCertificate",
            Error::NotAssociative(_) => "NotAssociative",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::NotPermutationSpectrum(_) => "NotPermutationSpectrum",
            Error::NoDividedCycle(_) => "NoDividedCycle",
            Error::NotPPowers { .. } => "NotPPowers",
            Error::Unclassified { .. } => "Unclassified",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::MissingTopExponent(_) => "MissingTopExponent",
            Error::ProjectiveInput(_) => "ProjectiveInput",
            Error::OutOfRange(_) => "OutOfRange",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
