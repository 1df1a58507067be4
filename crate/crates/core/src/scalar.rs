//! Exact scalar abstraction shared by the polynomial, rational-function and
//! series layers.
//!
//! Everything above this module is generic over [`Scalar`]. Two instances
//! ship with the crate: plain rationals ([`Rational`]) and elements of a
//! quadratic tower ([`crate::FieldElement`]). Floating-point types are not
//! instances; gcd normalisation and valuation tests need exact zero tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An exact field element.
///
/// The associated `Domain` names the field an element is *viewed in*. Two
/// elements whose domains cannot be joined are incompatible; arithmetic
/// between them is a programming error and panics.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    type Domain: Clone + Debug + PartialEq + Send + Sync;

    fn domain(&self) -> Self::Domain;

    /// Smallest domain containing both arguments, if one contains the other.
    fn join(a: &Self::Domain, b: &Self::Domain) -> Option<Self::Domain>;

    fn from_rational(q: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// A square root of `self` inside `domain`, if one exists there.
    fn sqrt_in(&self, domain: &Self::Domain) -> Option<Self>;
}

/// Scalars whose domain can be grown by adjoining square roots.
pub trait RootExtension: Scalar {
    type Error: std::error::Error;

    /// Returns a square root of `self` together with the (possibly larger)
    /// domain containing it. The domain is unchanged when `self` is
    /// already a square in `domain`.
    fn adjoin_sqrt(&self, domain: &Self::Domain) -> Result<(Self, Self::Domain), Self::Error>;
}

/// Exact square root of a rational number.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let sn = n.sqrt();
    if &sn * &sn != *n {
        return None;
    }
    let sd = d.sqrt();
    if &sd * &sd != *d {
        return None;
    }
    Some(Rational::new(sn, sd))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Scalar for Rational {
    type Domain = ();

    fn domain(&self) {}

    fn join(_: &(), _: &()) -> Option<()> {
        Some(())
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn sqrt_in(&self, _: &()) -> Option<Self> {
        rational_sqrt(self)
    }
}

/// `true` when `x` is the multiplicative identity; avoids requiring
/// `PartialEq`-based `One::is_one` on every scalar.
pub(crate) fn is_one<K: Scalar>(x: &K) -> bool {
    *x == K::one()
}

pub(crate) fn is_negative_unit<K: Scalar>(x: &K) -> bool {
    *x == -K::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rational_sqrt(&int(-1)), None);
        assert_eq!(rational_sqrt(&rat(2, 9)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
        assert!(is_one(&int(1)));
        assert!(is_negative_unit(&int(-1)));
    }
}
