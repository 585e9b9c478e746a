use thiserror::Error;

/// Errors raised by the arithmetic layers and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("order {order} does not divide p - 1 = {}", .p - 1)]
    OrderNotDividing { p: u64, order: u32 },

    #[error("argument is zero modulo p")]
    ZeroArgument,

    #[error("no root of unity of order {0} is stored in the prime context")]
    MissingRoot(u32),

    #[error("{value} is not a root of the order-{order} cyclotomic polynomial mod {p}")]
    InvalidRoot { p: u64, order: u32, value: u64 },

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("conductor {0} does not divide 24; exact arithmetic is unavailable")]
    ConductorTooLarge(u32),

    #[error("{0} is not coprime to the conductor {1}")]
    NotCoprime(i64, u32),

    #[error("value is not a rational integer: {0}")]
    NotRational(String),

    #[error("character has order {0}; an even order of at least 4 is required")]
    OddOrder(u32),

    #[error("character is trivial")]
    TrivialCharacter,

    #[error("invalid curve parameters: {0}")]
    BadParams(String),

    #[error("curve is singular modulo {0}")]
    SingularCurve(u64),

    #[error("trace {trace} violates the Hasse bound at p = {p}")]
    HasseViolation { p: u64, trace: i64 },

    #[error("{0} has no square root modulo p")]
    NoSquareRoot(u64),

    #[error("{p} is not representable as x^2 + {d}y^2")]
    NotRepresentable { p: u64, d: u64 },

    #[error("p = {p} is not congruent to 1 modulo {modulus}")]
    CongruenceViolation { p: u64, modulus: u64 },

    #[error("Hecke normalization mismatch at p = {p} for {curve}: {detail}")]
    NormalizationMismatch {
        p: u64,
        curve: String,
        detail: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
