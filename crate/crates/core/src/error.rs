use core::fmt;

use crate::tiling::Violation;

/// Errors raised by the library. Geometric defects of a tiling are not
/// errors; [`crate::verify`] reports those as a [`Violation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Checked integer arithmetic overflowed.
    Overflow,
    /// A square side, rectangle dimension or sequence term was not positive.
    NonPositive(i64),
    /// A window with `x0 >= x1` or `y0 >= y1`.
    EmptyWindow,
    /// Odd-only operation called with an even argument.
    NotOdd(i64),
    /// Input that must be strictly ascending was not.
    NotAscending { index: usize },
    /// The same side appears twice where sides must be distinct.
    DuplicateSide(i64),
    /// An operation that needs a perfect tiling was given one that fails.
    NotVerified(Violation),
    /// An operation that needs a rectangle tiling was given a window.
    NotRectangle,
    /// Search gave up after expanding this many nodes.
    BudgetExhausted { nodes: u64 },
    /// Scaled sequences that should be disjoint share a term.
    SidesCollide { value: i64 },
    /// Any other violated precondition.
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => f.write_str("integer overflow"),
            Error::NonPositive(v) => write!(f, "expected a positive integer, got {}", v),
            Error::EmptyWindow => f.write_str("window must satisfy x0 < x1 and y0 < y1"),
            Error::NotOdd(v) => write!(f, "expected an odd integer, got {}", v),
            Error::NotAscending { index } => {
                write!(f, "input is not strictly ascending at index {}", index)
            }
            Error::DuplicateSide(s) => write!(f, "side {} is already used", s),
            Error::NotVerified(v) => write!(f, "tiling does not verify: {}", v),
            Error::NotRectangle => f.write_str("operation requires a rectangle region"),
            Error::BudgetExhausted { nodes } => {
                write!(f, "search budget exhausted after {} nodes", nodes)
            }
            Error::SidesCollide { value } => write!(f, "sequences share the term {}", value),
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}
