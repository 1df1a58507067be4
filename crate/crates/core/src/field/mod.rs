//! Exact arithmetic in iterated quadratic extensions of the rationals.
//!
//! ```
//! use localfield::scalar::int;
//! use localfield::FieldTower;
//!
//! let q = FieldTower::rationals();
//! let minus_one = q.rational(int(-1));
//! let tower = q.extend("alpha", &minus_one, &minus_one).unwrap();
//! let alpha = tower.generator("alpha").unwrap();
//! assert_eq!(alpha.clone() * alpha.clone(), alpha + tower.one());
//! ```

mod coords;
mod element;
mod tower;

pub use element::FieldElement;
pub use tower::{Adjunction, FieldTower, SquareTest};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("generator name `{0}` is already used in the tower")]
    NameCollision(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("element of {from} does not embed into {to}")]
    NotAPrefix { from: String, to: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("x^2 + bx + c for `{name}` already has the root {root}")]
    Reducible { name: String, root: String },
}

#[cfg(test)]
mod tests;
