use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors produced by the chain-model routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Chain models need at least two levels.
    DimensionTooSmall { dimension: usize, minimum: usize },
    /// A coupling-indexed vector had the wrong number of entries.
    LengthMismatch { expected: usize, found: usize },
    /// A characteristic polynomial carried an odd power of `E` with a
    /// nonzero coefficient (or an odd-dimensional one was not divisible by `E`).
    ParityViolation { power: usize },
    /// The requested series truncation cannot hold the secular coefficients.
    TruncationTooSmall { order: usize, needed: usize },
    /// The polynomial root finder did not settle within its iteration budget.
    NonConvergence { iterations: u32 },
    /// A square-root argument crossed zero in a closed-form expression.
    Domain(&'static str),
    /// The reality predicate changed sign more than once along a scan.
    NonMonotonePredicate { brackets: Vec<(f64, f64)> },
    /// The spectrum is non-real on the whole scanned interval.
    NoRealWindow { t_hi: f64 },
    /// No positive parameter value solves the threshold equation.
    NoPositiveRoot,
    /// A grid value lies outside the admissible range.
    OutOfRange { value: f64, lo: f64, hi: f64 },
    /// Too few data points for a fit.
    InsufficientPoints { found: usize, needed: usize },
    /// A numeric argument violated a precondition.
    InvalidArgument(&'static str),
    /// A rational literal could not be parsed.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionTooSmall { dimension, minimum } => {
                write!(f, "dimension {dimension} is too small (need at least {minimum})")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} coupling entries, found {found}")
            }
            Error::ParityViolation { power } => {
                write!(f, "parity violation: nonzero coefficient at E^{power}")
            }
            Error::TruncationTooSmall { order, needed } => {
                write!(f, "truncation order {order} is below the required {needed}")
            }
            Error::NonConvergence { iterations } => {
                write!(f, "root finder did not converge after {iterations} iterations")
            }
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NonMonotonePredicate { brackets } => {
                write!(f, "reality predicate changes more than once; brackets:")?;
                for (lo, hi) in brackets {
                    write!(f, " [{lo}, {hi}]")?;
                }
                Ok(())
            }
            Error::NoRealWindow { t_hi } => {
                write!(f, "spectrum is non-real on the whole interval (0, {t_hi}]")
            }
            Error::NoPositiveRoot => write!(f, "no positive root"),
            Error::OutOfRange { value, lo, hi } => {
                write!(f, "value {value} outside the open interval ({lo}, {hi})")
            }
            Error::InsufficientPoints { found, needed } => {
                write!(f, "{found} points available, at least {needed} required")
            }
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
