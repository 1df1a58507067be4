//! Evaluation of expression trees in different value domains.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::expr::Expr;
use super::VarietyError;
use crate::field::{FieldElement, FieldTower};
use crate::poly::Polynomial;
use crate::scalar::{ArithOp, Rational};
use crate::series::SeriesError;
use crate::{Place, RatFun, Series};

/// A value domain that expressions can be evaluated in.
pub trait Backend {
    type Value: Clone;

    fn number(&self, n: &BigInt) -> Result<Self::Value, VarietyError>;
    fn ident(&self, name: &str) -> Result<Self::Value, VarietyError>;
    /// The radicand when `name` is bound to a formal square root.
    fn radicand(&self, name: &str) -> Option<Self::Value>;
    fn arith(&self, op: ArithOp, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, VarietyError>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value, VarietyError>;
    fn powi(&self, a: &Self::Value, k: i64) -> Result<Self::Value, VarietyError>;
}

pub fn eval<B: Backend>(b: &B, e: &Expr) -> Result<B::Value, VarietyError> {
    match e {
        Expr::Int(n) => b.number(n),
        Expr::Ident(name) => {
            if b.radicand(name).is_some() {
                return Err(VarietyError::OddPowerOccurrence(name.clone()));
            }
            b.ident(name)
        }
        Expr::Neg(a) => b.neg(&eval(b, a)?),
        Expr::Bin(op, x, y) => b.arith(*op, &eval(b, x)?, &eval(b, y)?),
        Expr::Pow(base, k) => {
            if let Expr::Ident(name) = base.as_ref() {
                if let Some(g) = b.radicand(name) {
                    if k % 2 != 0 {
                        return Err(VarietyError::OddPowerOccurrence(name.clone()));
                    }
                    return b.powi(&g, k / 2);
                }
            }
            b.powi(&eval(b, base)?, *k)
        }
    }
}

/// Fails when a variable in `sqrt_vars` occurs other than as `v^(even)`.
pub fn check_even_powers(e: &Expr, sqrt_vars: &[String]) -> Result<(), VarietyError> {
    match e {
        Expr::Int(_) => Ok(()),
        Expr::Ident(n) if sqrt_vars.contains(n) => Err(VarietyError::OddPowerOccurrence(n.clone())),
        Expr::Ident(_) => Ok(()),
        Expr::Pow(base, k) => match base.as_ref() {
            Expr::Ident(n) if sqrt_vars.contains(n) => {
                if k % 2 == 0 {
                    Ok(())
                } else {
                    Err(VarietyError::OddPowerOccurrence(n.clone()))
                }
            }
            other => check_even_powers(other, sqrt_vars),
        },
        Expr::Neg(a) => check_even_powers(a, sqrt_vars),
        Expr::Bin(_, a, b) => {
            check_even_powers(a, sqrt_vars)?;
            check_even_powers(b, sqrt_vars)
        }
    }
}

/// A local value: exact until it meets a truncated series.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalValue {
    Exact(RatFun),
    Trunc(Series),
}

impl LocalValue {
    /// `r`-order, or `None` for zero (exact or to precision).
    pub fn order(&self) -> Option<i64> {
        match self {
            LocalValue::Exact(f) => f.order_at_zero().ok(),
            LocalValue::Trunc(s) => s.lead(),
        }
    }

    pub fn ram(&self) -> u32 {
        match self {
            LocalValue::Exact(f) => f.place().ram(),
            LocalValue::Trunc(s) => s.place().ram(),
        }
    }

    pub fn leading(&self) -> Option<FieldElement> {
        match self {
            LocalValue::Exact(f) => f.leading_coefficient().ok(),
            LocalValue::Trunc(s) => s.leading_coefficient().ok(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LocalValue::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LocalValue::Exact(f) => f.is_zero(),
            LocalValue::Trunc(s) => s.is_zero_to_precision(),
        }
    }

    pub fn precision(&self) -> Option<i64> {
        match self {
            LocalValue::Exact(_) => None,
            LocalValue::Trunc(s) => Some(s.precision()),
        }
    }

    /// `order / e`, the valuation in units of `t`.
    pub fn valuation(&self) -> Option<Rational> {
        self.order().map(|o| Rational::new(o.into(), i64::from(self.ram()).into()))
    }

    pub fn to_series(&self, terms: usize) -> Series {
        match self {
            LocalValue::Exact(f) => f.to_puiseux(terms),
            LocalValue::Trunc(s) => s.clone(),
        }
    }
}

impl fmt::Display for LocalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalValue::Exact(g) => write!(f, "{g}"),
            LocalValue::Trunc(s) => write!(f, "{s}"),
        }
    }
}

/// Expansion of an exact value precise enough to combine with `s`
/// without lowering the precision `s` already has.
fn expand_against(f: &RatFun, s: &Series) -> Result<(Series, Series), SeriesError> {
    let (ef, es) = (f.place().ram(), s.place().ram());
    let l = ef.lcm(&es);
    let f = f.ramify(l / ef);
    let s = s.ramify(l / es);
    let rel = s.relative_precision().max(1);
    let terms = match f.order_at_zero() {
        Ok(o) => (s.precision() - o).max(rel),
        Err(_) => s.precision().max(rel),
    };
    Ok((f.to_puiseux(terms.max(1) as usize), s))
}

/// Evaluates at a place, with unknowns taken from a binding table.
pub struct LocalBackend<'a> {
    pub place: Place,
    pub tower: FieldTower,
    pub values: &'a BTreeMap<String, LocalValue>,
    pub radicands: &'a BTreeMap<String, LocalValue>,
}

impl LocalBackend<'_> {
    fn exact(&self, f: RatFun) -> LocalValue {
        LocalValue::Exact(f)
    }

    fn constant(&self, c: FieldElement) -> Result<LocalValue, VarietyError> {
        Ok(self.exact(RatFun::constant(c, self.place.clone(), self.tower.clone())?))
    }
}

impl Backend for LocalBackend<'_> {
    type Value = LocalValue;

    fn number(&self, n: &BigInt) -> Result<LocalValue, VarietyError> {
        self.constant(FieldElement::rational(Rational::from_integer(n.clone())))
    }

    fn ident(&self, name: &str) -> Result<LocalValue, VarietyError> {
        match name {
            "t" => Ok(self.exact(RatFun::t_value(self.place.clone(), self.tower.clone())?)),
            "r" => Ok(self.exact(RatFun::param(self.place.clone(), self.tower.clone()))),
            _ => {
                if let Some(v) = self.values.get(name) {
                    return Ok(v.clone());
                }
                match self.tower.generator(name) {
                    Some(g) => self.constant(g),
                    None => Err(VarietyError::Unbound(name.to_string())),
                }
            }
        }
    }

    fn radicand(&self, name: &str) -> Option<LocalValue> {
        self.radicands.get(name).cloned()
    }

    fn arith(&self, op: ArithOp, a: &LocalValue, b: &LocalValue) -> Result<LocalValue, VarietyError> {
        use LocalValue::*;
        Ok(match (a, b) {
            (Exact(f), Exact(g)) => Exact(RatFun::arith(op, f, g)?),
            (Trunc(s), Trunc(u)) => Trunc(Series::arith(op, s, u)?),
            (Exact(f), Trunc(s)) => {
                if f.is_zero() && op != ArithOp::Add && op != ArithOp::Sub {
                    if op == ArithOp::Div && s.is_zero_to_precision() {
                        return Err(SeriesError::DivisionByZeroSeries.into());
                    }
                    return Ok(Exact(f.clone()));
                }
                let (fs, s) = expand_against(f, s)?;
                Trunc(Series::arith(op, &fs, &s)?)
            }
            (Trunc(s), Exact(f)) => {
                if f.is_zero() {
                    match op {
                        ArithOp::Add | ArithOp::Sub => return Ok(Trunc(s.clone())),
                        ArithOp::Mul => return Ok(Exact(f.clone())),
                        ArithOp::Div => return Err(SeriesError::DivisionByZero.into()),
                    }
                }
                let (fs, s) = expand_against(f, s)?;
                Trunc(Series::arith(op, &s, &fs)?)
            }
        })
    }

    fn neg(&self, a: &LocalValue) -> Result<LocalValue, VarietyError> {
        Ok(match a {
            LocalValue::Exact(f) => LocalValue::Exact(f.neg()),
            LocalValue::Trunc(s) => LocalValue::Trunc(s.neg()),
        })
    }

    fn powi(&self, a: &LocalValue, k: i64) -> Result<LocalValue, VarietyError> {
        Ok(match a {
            LocalValue::Exact(f) => LocalValue::Exact(f.powi(k)?),
            LocalValue::Trunc(s) => LocalValue::Trunc(s.powi(k)?),
        })
    }
}

/// Evaluates variable-free expressions as polynomials in one generator
/// name, with coefficients in `tower`. Used to read `adjoin` declarations.
pub struct PolyBackend<'a> {
    pub tower: &'a FieldTower,
    pub var: &'a str,
}

impl Backend for PolyBackend<'_> {
    type Value = Polynomial<FieldElement>;

    fn number(&self, n: &BigInt) -> Result<Self::Value, VarietyError> {
        Ok(Polynomial::constant(self.tower.rational(Rational::from_integer(n.clone()))))
    }

    fn ident(&self, name: &str) -> Result<Self::Value, VarietyError> {
        if name == self.var {
            return Ok(Polynomial::x());
        }
        self.tower
            .generator(name)
            .map(Polynomial::constant)
            .ok_or_else(|| VarietyError::Unbound(name.to_string()))
    }

    fn radicand(&self, _: &str) -> Option<Self::Value> {
        None
    }

    fn arith(&self, op: ArithOp, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, VarietyError> {
        Ok(match op {
            ArithOp::Add => a + b,
            ArithOp::Sub => a - b,
            ArithOp::Mul => a * b,
            ArithOp::Div => match b.degree() {
                Some(0) => a.scale(&b.coeff(0).checked_inv()?),
                Some(_) => return Err(VarietyError::NotPolynomial(self.var.to_string())),
                None => return Err(SeriesError::DivisionByZero.into()),
            },
        })
    }

    fn neg(&self, a: &Self::Value) -> Result<Self::Value, VarietyError> {
        Ok(-a)
    }

    fn powi(&self, a: &Self::Value, k: i64) -> Result<Self::Value, VarietyError> {
        if k >= 0 {
            return Ok(a.pow(k as u32));
        }
        match a.degree() {
            Some(0) => Ok(Polynomial::constant(a.coeff(0).checked_inv()?.pow((-k) as u32))),
            Some(_) => Err(VarietyError::NotPolynomial(self.var.to_string())),
            None => Err(SeriesError::DivisionByZero.into()),
        }
    }
}

/// Exact evaluation of a variable-free expression at `place`.
pub fn eval_at(e: &Expr, place: &Place, tower: &FieldTower) -> Result<RatFun, VarietyError> {
    let empty = BTreeMap::new();
    let b = LocalBackend { place: place.clone(), tower: tower.clone(), values: &empty, radicands: &empty };
    match eval(&b, e)? {
        LocalValue::Exact(f) => Ok(f),
        LocalValue::Trunc(_) => unreachable!("no series inputs"),
    }
}

/// Reads `x^2 + b*x + c` (any arrangement) as the pair `(b, c)`.
pub fn quadratic_coefficients(
    lhs: &Expr,
    rhs: &Expr,
    name: &str,
    tower: &FieldTower,
) -> Result<(FieldElement, FieldElement), VarietyError> {
    let b = PolyBackend { tower, var: name };
    let p = &eval(&b, lhs)? - &eval(&b, rhs)?;
    if p.degree() != Some(2) {
        return Err(VarietyError::NotQuadratic(name.to_string()));
    }
    let p = p.monic();
    Ok((p.coeff(1), p.coeff(0)))
}
