use alloc::string::String;
use core::fmt;

/// Errors raised by the arithmetic layers and the theorem drivers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero polynomial or zero rational function.
    DivisionByZero,
    /// Polynomial division left a nonzero remainder.
    NonExactDivision,
    /// `gcd(0, 0)` is undefined.
    BothZero,
    /// A congruence modulus was zero or a constant.
    InvalidModulus,
    /// The p-adic valuation of zero was requested.
    ZeroValuation,
    /// A rational with `p` in its denominator was reduced modulo a power of `p`.
    NotPIntegral,
    /// Arguments outside the hypotheses of the congruence being checked.
    HypothesisViolation(String),
    /// Arguments outside an operation's domain.
    InvalidParameter(String),
    /// The number of summands exceeds the configured size guard.
    SizeGuard { terms: u64, limit: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NonExactDivision => f.write_str("division leaves a nonzero remainder"),
            Error::BothZero => f.write_str("gcd of two zero polynomials"),
            Error::InvalidModulus => f.write_str("modulus must be a polynomial of degree at least 1"),
            Error::ZeroValuation => f.write_str("valuation of zero is infinite"),
            Error::NotPIntegral => f.write_str("value is not p-integral"),
            Error::HypothesisViolation(why) => write!(f, "hypothesis violated: {why}"),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Error::SizeGuard { terms, limit } => {
                write!(f, "{terms} summands exceed the size guard of {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(why: impl Into<String>) -> Error {
    Error::InvalidParameter(why.into())
}
