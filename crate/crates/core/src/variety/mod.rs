//! Polynomial systems with `!= 0` constraints, candidate local points, and
//! their exact or truncated verification.

mod eval;
mod expr;
pub mod lemma91;
mod point;
mod system;
mod verify;

pub use eval::{check_even_powers, eval, eval_at, quadratic_coefficients, Backend, LocalBackend, LocalValue, PolyBackend};
pub use expr::{parse_expr, Expr, ParseError, ParseErrorKind, RESERVED};
pub use point::{Binding, PointAssignment};
pub use system::{Equation, PolynomialSystem};
pub use verify::{
    cleared_form, lift_along_cover, resolve_sqrt, solve_square, split_cover, verify_point, Certificate,
    EquationOutcome, EquationReport, InequationOutcome, InequationReport, LiftOutcome, SqrtBindingReport,
    SquareOutcome, VerificationReport, Verdict, VerifyMode,
};

pub(crate) use expr::Parser;
pub(crate) use verify::valuation_string;

use thiserror::Error;

use crate::field::FieldError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VarietyError {
    #[error("`{0}` is bound to a formal square root but occurs in an odd power")]
    OddPowerOccurrence(String),
    #[error("`{0}` is not bound")]
    Unbound(String),
    #[error("binding for `{0}` lives at a different place")]
    PlaceMismatch(String),
    #[error("binding for `{0}` is a truncated series; exact mode needs exact bindings")]
    SeriesInExactMode(String),
    #[error("system and point use incompatible coefficient fields")]
    TowerMismatch,
    #[error("the divisor evaluates to zero")]
    ZeroDenominator,
    #[error("the expression evaluates to zero")]
    ZeroValue,
    #[error("the last equation is not of the form `w^2 = g` in a new variable")]
    NotACover,
    #[error("the base point does not verify on the base system")]
    BasePointFails,
    #[error("`{0}` must enter polynomially")]
    NotPolynomial(String),
    #[error("declaration of `{0}` is not a quadratic")]
    NotQuadratic(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[cfg(test)]
mod tests;
