//! Exact local-field arithmetic for verifying points on double-cover
//! surfaces over function fields, plus an orbifold multiplicity calculus.
//!
//! The layers build on each other:
//!
//! * [`field`]: iterated quadratic extensions of the rationals;
//! * [`poly`] and [`series`]: rational functions and truncated Puiseux
//!   series in a ramified local parameter;
//! * [`variety`]: expression parsing, point assignments and exact or
//!   truncated verification of polynomial systems at a place;
//! * [`orbifold`]: degrees of orbifold curves, multiplicity semigroups and
//!   finite perturbations;
//! * [`claims`]: a registry of named checks, the claim-file format and the
//!   runner behind the `verify` binary.
//!
//! Everything above the field layer is generic over [`Scalar`]. The
//! aliases below fix the two scalar types that ship with the crate.

pub mod claims;
pub mod field;
pub mod orbifold;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod variety;

pub use field::{Adjunction, FieldElement, FieldError, FieldTower, SquareTest};
pub use poly::Polynomial;
pub use scalar::{ArithOp, Rational, RootExtension, Scalar};
pub use series::{
    Center, LocalSquare, NonSquareCertificate, PlaceTag, PuiseuxSeries, RationalFunction, SeriesError,
    SquareMode,
};

/// Rational function over a quadratic tower.
pub type RatFun = RationalFunction<FieldElement>;
/// Truncated series over a quadratic tower.
pub type Series = PuiseuxSeries<FieldElement>;
/// Place with a tower-valued centre.
pub type Place = PlaceTag<FieldElement>;
/// Rational function with plain rational coefficients.
pub type QRatFun = RationalFunction<Rational>;
