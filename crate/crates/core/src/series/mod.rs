//! Exact rational functions and truncated Puiseux series in one ramified
//! local parameter `r`.
//!
//! A [`PlaceTag`] fixes how the global parameter `t` relates to `r`:
//! `t = c + r^e` at a finite centre `c`, or `t = r^{-e}` at infinity. The
//! `t`-adic valuation of an element is its `r`-order divided by `e`.

mod place;
mod puiseux;
mod ratfun;
mod square;

pub use place::{Center, PlaceTag};
pub use puiseux::{PuiseuxSeries, DEFAULT_PRECISION};
pub use ratfun::RationalFunction;
pub use square::{is_square_local, LocalElement, LocalSquare, NonSquareCertificate, SquareMode};

use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by a series that is zero to its precision")]
    DivisionByZeroSeries,
    #[error("operands live at different places")]
    PlaceMismatch,
    #[error("operands live in incompatible coefficient fields")]
    TowerMismatch,
    #[error("the zero function has no order")]
    ZeroFunction,
    #[error("no known coefficients remain at the requested precision")]
    PrecisionExhausted,
    #[error("ramification index must be positive")]
    InvalidRamification,
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub(crate) fn join_domains<K: crate::Scalar>(
    a: &K::Domain,
    b: &K::Domain,
) -> Result<K::Domain, SeriesError> {
    K::join(a, b).ok_or(SeriesError::TowerMismatch)
}

#[cfg(test)]
mod tests;
