use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::coords::{self, Coords};
use super::tower::{Adjunction, FieldTower};
use super::FieldError;
use crate::scalar::{ArithOp, Rational, RootExtension, Scalar};

/// An element of a [`FieldTower`], stored as exact coordinates in the
/// product basis of the tower's generators.
///
/// Binary operations coerce both operands into the longer tower when one
/// tower is a prefix of the other. The operator traits panic on
/// incompatible towers; [`FieldElement::arith`] reports the error instead.
#[derive(Clone)]
pub struct FieldElement {
    tower: FieldTower,
    coords: Coords,
}

impl FieldElement {
    pub(crate) fn from_parts(tower: FieldTower, coords: Coords) -> Self {
        debug_assert_eq!(coords.len(), tower.dimension());
        FieldElement { tower, coords }
    }

    pub fn rational(q: Rational) -> Self {
        FieldTower::rationals().rational(q)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Coordinates in the product basis (index bit `j` = generator `j`).
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        coords::is_rational(&self.coords)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    /// The same element viewed in `target`, which must extend this element's tower.
    pub fn embed(&self, target: &FieldTower) -> Result<FieldElement, FieldError> {
        if !self.tower.is_prefix_of(target) {
            // Rationals embed everywhere regardless of where they were built.
            if self.is_rational() {
                return Ok(target.rational(self.coords[0].clone()));
            }
            return Err(FieldError::NotAPrefix {
                from: self.tower.to_string(),
                to: target.to_string(),
            });
        }
        Ok(FieldElement {
            tower: target.clone(),
            coords: coords::pad(&self.coords, target.dimension()),
        })
    }

    fn coerce(&self, other: &FieldElement) -> Result<(FieldTower, Coords, Coords), FieldError> {
        if self.tower.is_prefix_of(&other.tower) || self.is_rational() {
            let a = self.embed(&other.tower)?;
            Ok((other.tower.clone(), a.coords, other.coords.clone()))
        } else if other.tower.is_prefix_of(&self.tower) || other.is_rational() {
            let b = other.embed(&self.tower)?;
            Ok((self.tower.clone(), self.coords.clone(), b.coords))
        } else {
            Err(FieldError::NotAPrefix {
                from: other.tower.to_string(),
                to: self.tower.to_string(),
            })
        }
    }

    pub fn arith(op: ArithOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        let (tower, x, y) = a.coerce(b)?;
        let steps = tower.steps();
        let coords = match op {
            ArithOp::Add => coords::add(&x, &y),
            ArithOp::Sub => coords::sub(&x, &y),
            ArithOp::Mul => coords::mul(steps, &x, &y),
            ArithOp::Div => {
                let yi = coords::inv(steps, &y).ok_or(FieldError::DivisionByZero)?;
                coords::mul(steps, &x, &yi)
            }
        };
        Ok(FieldElement { tower, coords })
    }

    pub fn checked_inv(&self) -> Result<FieldElement, FieldError> {
        let coords = coords::inv(self.tower.steps(), &self.coords).ok_or(FieldError::DivisionByZero)?;
        Ok(FieldElement { tower: self.tower.clone(), coords })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        Self::arith(ArithOp::Div, self, other)
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.tower.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Square root in this element's own tower.
    pub fn sqrt(&self) -> Option<FieldElement> {
        self.tower.sqrt(self).expect("element embeds in its own tower")
    }

    fn expect_arith(op: ArithOp, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match Self::arith(op, a, b) {
            Ok(v) => v,
            Err(e) => panic!("field arithmetic failed: {e}"),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match self.coerce(other) {
            Ok((_, a, b)) => a == b,
            Err(_) => false,
        }
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        coords::is_zero(&self.coords)
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::rational(Rational::one())
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement { tower: self.tower, coords: coords::neg(&self.coords) }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                FieldElement::expect_arith($op, &self, &rhs)
            }
        }

        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                FieldElement::expect_arith($op, self, rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);
binop!(Div, div, ArithOp::Div);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.tower.generator_names().collect();
        let mut first = true;
        for (idx, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let monomial: Vec<&str> = (0..names.len())
                .filter(|j| idx & (1 << j) != 0)
                .map(|j| names[j])
                .collect();
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{mag}*{}", monomial.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.tower)
    }
}

impl Scalar for FieldElement {
    type Domain = FieldTower;

    fn domain(&self) -> FieldTower {
        self.tower.clone()
    }

    fn join(a: &FieldTower, b: &FieldTower) -> Option<FieldTower> {
        a.join(b)
    }

    fn from_rational(q: Rational) -> Self {
        FieldElement::rational(q)
    }

    fn sqrt_in(&self, domain: &FieldTower) -> Option<Self> {
        domain.sqrt(self).ok().flatten()
    }
}

impl RootExtension for FieldElement {
    type Error = FieldError;

    fn adjoin_sqrt(&self, domain: &FieldTower) -> Result<(FieldElement, FieldTower), FieldError> {
        let name = domain.fresh_name("rt");
        let minus_a = -self.embed(domain)?;
        match domain.adjoin_quadratic(&name, &domain.zero(), &minus_a)? {
            Adjunction::AlreadySplit(w) => Ok((w, domain.clone())),
            Adjunction::Extended(tower) => {
                let root = tower.generator(&name).expect("just adjoined");
                Ok((root, tower))
            }
        }
    }
}
