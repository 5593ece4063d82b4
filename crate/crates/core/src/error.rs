use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("order undefined: f(0) = 0")]
    OrderUndefined,
    #[error("order exceeds cap {cap}")]
    OrderExceedsCap { cap: u64 },
    #[error("x^{n} is not congruent to 1 modulo the polynomial")]
    NotAnOrderMultiple { n: u64 },
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("QR code condition violated: {p} is not congruent to +-1 mod 8")]
    QrCondition { p: u64 },
    #[error("modulus {0} must be odd and at least 3")]
    InvalidModulus(u64),
    #[error("extension degree {0} is not supported")]
    FieldTooLarge(u32),
    #[error("polynomial of degree {degree} is not irreducible")]
    Reducible { degree: usize },
    #[error("element does not have multiplicative order {p}")]
    NotARootOfUnity { p: u64 },
    #[error("exponent {s} out of range for root order {p}")]
    ExponentOutOfRange { s: u64, p: u64 },
    #[error("not a cyclic code generator for length {n}")]
    NotCyclicGenerator { n: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("message degree {degree} must be below the code dimension {k}")]
    MessageTooLong { degree: usize, k: usize },
    #[error("code has dimension equal to its length; no parity constraints")]
    NoParityConstraints,
    #[error("dimension {k} exceeds exhaustive cap {cap}")]
    DimensionExceedsCap { k: usize, cap: usize },
    #[error("duality check requires p = -1 mod 8, got {p}")]
    DualityPrecondition { p: u64 },
    #[error("2^{l} - 1 is not prime")]
    NotMersenne { l: u32 },
    #[error("C2 must be a proper subcode of C1")]
    NotProperSubcode,
    #[error("C2\u{22a5} \u{2286} C2 \u{2282} C1 fails")]
    ChainCondition,
    #[error("misalignment tolerance exceeded: c_l + c_r = {sum} but ord(f) = {order}")]
    MisalignmentTooLarge { sum: usize, order: u64 },
    #[error("nonpositive dimension: 2k2 - n = {0}")]
    NonpositiveDimension(i64),
    #[error("invalid quotient polynomial: {0}")]
    InvalidQuotient(&'static str),
    #[error("deletion of {deleted} factors out of range (chain has {available})")]
    DeletionOutOfRange { deleted: usize, available: usize },
    #[error("theta {theta} outside [-{c_l}, {c_r}]")]
    ThetaOutOfRange { theta: i64, c_l: usize, c_r: usize },
    #[error("word is not a codeword of the inner code")]
    NotACodeword,
    #[error("max_errors {max_errors} exceeds the guaranteed correction radius {radius}")]
    ExceedsGuarantee { max_errors: usize, radius: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Invariant(String),
}

impl Error {
    /// True for violations of a proven property, as opposed to bad caller input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
