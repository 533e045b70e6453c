//! The one error type shared by every module of this crate.

use core::fmt;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A base below the minimum the operation supports.
    BaseTooSmall { b: u64, min: u64 },
    /// The operation requires a squarefree base.
    BaseNotSquarefree { b: u64 },
    /// `a = b^k` for an integer `k`: no canonical form, constant digit sequence.
    IntegralPowerOfBase { k: i64 },
    /// `a = b^(p/q)`: the rotation number is rational, so the torus sets collapse.
    RationalPowerOfBase,
    /// A rational literal that is not of the form `INT` or `INT/INT`, or has a zero part.
    InvalidRational(&'static str),
    /// Asked for length-`n` windows of a prefix shorter than `n`.
    BlockLongerThanPrefix { n: usize, prefix_len: usize },
    /// Empirical counts failed to stabilize within the doubling budget.
    ConvergenceBudgetExceeded { final_prefix_len: usize },
    /// A prefix too short for the requested construction.
    PrefixTooShort { needed: usize, got: usize },
    /// The five-block parse hit a digit that fits no block, at this offset.
    ParseMismatch { offset: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BaseTooSmall { b, min } => {
                write!(f, "base {b} is too small (need b >= {min})")
            }
            Error::BaseNotSquarefree { b } => write!(f, "base {b} is not squarefree"),
            Error::IntegralPowerOfBase { k } => {
                write!(f, "a is the integral power b^{k} of the base")
            }
            Error::RationalPowerOfBase => write!(f, "a is a rational power of the base"),
            Error::InvalidRational(why) => write!(f, "invalid rational literal: {why}"),
            Error::BlockLongerThanPrefix { n, prefix_len } => {
                write!(f, "block length {n} exceeds prefix length {prefix_len}")
            }
            Error::ConvergenceBudgetExceeded { final_prefix_len } => write!(
                f,
                "block counts did not stabilize up to prefix length {final_prefix_len}"
            ),
            Error::PrefixTooShort { needed, got } => {
                write!(f, "prefix of length {got} is too short (need at least {needed})")
            }
            Error::ParseMismatch { offset } => {
                write!(f, "digit at offset {offset} fits no block")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
