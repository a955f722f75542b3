use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The CLI maps these onto exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("prime {0} is too large for single-word arithmetic")]
    ModulusTooLarge(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("no embedding from degree {src} into degree {dst}")]
    NoEmbedding { src: usize, dst: usize },
    #[error("precision cap {0} is below the floor of 8 digits")]
    PrecisionTooSmall(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("residue of an element of negative valuation")]
    NegativeValuation,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("ramification order {e} is divisible by the residue characteristic {p}")]
    WildRamification { e: u64, p: u64 },
    #[error("value {m} does not have order {e} modulo the value group")]
    OrderMismatch { m: i64, e: u64 },
    #[error("residue is not a simple root")]
    NotSimpleRoot,
    #[error("polynomial is not primitive")]
    NotPrimitive,
    #[error("Newton hull has fewer than two finite points")]
    EmptyHull,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("residue polynomial is not purely inseparable")]
    NotPurelyInseparable,
    #[error("polynomial is not a factor of the residue polynomial")]
    NotAFactor,
    #[error("recursion depth {0} exceeded")]
    DepthExceeded(usize),
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("x appears in a denominator")]
    XInDenominator,
    #[error("expression is not a polynomial in x: {0}")]
    NotAPolynomialInX(String),
    #[error("f is not square-free")]
    NotSquareFree,
    #[error("residue characteristic {p} must exceed deg f = {deg}")]
    CharTooSmall { p: u64, deg: usize },
    #[error("deg f = {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn exhausted(what: impl Into<String>) -> Self {
        Error::PrecisionExhausted(what.into())
    }

    pub(crate) fn inconsistent(what: impl Into<String>) -> Self {
        Error::InternalInconsistency(what.into())
    }

    /// Process exit code: 2 input error, 3 precision exhausted, 4 invariant breach.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted(_) => 3,
            Error::InternalInconsistency(_)
            | Error::DepthExceeded(_)
            | Error::NotAFactor
            | Error::NotPurelyInseparable
            | Error::NotSimpleRoot
            | Error::NotPrimitive
            | Error::OrderMismatch { .. }
            | Error::WildRamification { .. }
            | Error::FieldMismatch
            | Error::NoEmbedding { .. }
            | Error::EmptyHull => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
