use std::fmt;
use std::sync::Arc;

use super::coords::{self, Coords};
use super::{FieldElement, FieldError};
use crate::scalar::Rational;

/// One quadratic adjunction: a root `theta` of `x^2 + b x + c`, with `b` and
/// `c` given as coordinates one level below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Step {
    pub(crate) name: String,
    pub(crate) b: Coords,
    pub(crate) c: Coords,
}

/// A tower `Q = K_0 ⊂ K_1 ⊂ ... ⊂ K_h` of quadratic extensions.
///
/// Towers are immutable and cheap to clone. A tower is a *prefix* of another
/// when its steps are the leading steps of the other; elements of a prefix
/// embed into the longer tower by zero-padding.
#[derive(Clone)]
pub struct FieldTower {
    steps: Arc<[Step]>,
}

/// Result of [`FieldTower::adjoin_quadratic`].
#[derive(Clone, Debug, PartialEq)]
pub enum Adjunction {
    Extended(FieldTower),
    /// The polynomial already has a root in the tower.
    AlreadySplit(FieldElement),
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower { steps: Arc::from(Vec::new()) }
    }

    pub fn height(&self) -> usize {
        self.steps.len()
    }

    pub fn dimension(&self) -> usize {
        1 << self.steps.len()
    }

    pub(crate) fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.name.as_str())
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.steps.iter().any(|s| s.name == name)
    }

    pub fn generator(&self, name: &str) -> Option<FieldElement> {
        let idx = self.steps.iter().position(|s| s.name == name)?;
        let mut v = coords::zeros(self.dimension());
        v[1 << idx] = Rational::from_integer(1.into());
        Some(FieldElement::from_parts(self.clone(), v))
    }

    /// The minimal polynomial `(b, c)` of the named generator, embedded in this tower.
    pub fn minimal_polynomial(&self, name: &str) -> Option<(FieldElement, FieldElement)> {
        let step = self.steps.iter().find(|s| s.name == name)?;
        let dim = self.dimension();
        Some((
            FieldElement::from_parts(self.clone(), coords::pad(&step.b, dim)),
            FieldElement::from_parts(self.clone(), coords::pad(&step.c, dim)),
        ))
    }

    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        if Arc::ptr_eq(&self.steps, &other.steps) {
            return true;
        }
        self.steps.len() <= other.steps.len() && self.steps[..] == other.steps[..self.steps.len()]
    }

    /// Smallest of the two towers containing both, if one is a prefix of the other.
    pub fn join(&self, other: &FieldTower) -> Option<FieldTower> {
        if self.is_prefix_of(other) {
            Some(other.clone())
        } else if other.is_prefix_of(self) {
            Some(self.clone())
        } else {
            None
        }
    }

    pub fn rational(&self, q: Rational) -> FieldElement {
        FieldElement::from_parts(self.clone(), coords::constant(self.dimension(), q))
    }

    pub fn zero(&self) -> FieldElement {
        self.rational(Rational::from_integer(0.into()))
    }

    pub fn one(&self) -> FieldElement {
        self.rational(Rational::from_integer(1.into()))
    }

    /// Adjoins a root of `x^2 + b x + c`, or reports a root already present.
    pub fn adjoin_quadratic(
        &self,
        name: &str,
        b: &FieldElement,
        c: &FieldElement,
    ) -> Result<Adjunction, FieldError> {
        if name.is_empty() {
            return Err(FieldError::InvalidName(name.to_string()));
        }
        if self.has_generator(name) {
            return Err(FieldError::NameCollision(name.to_string()));
        }
        let b = b.embed(self)?;
        let c = c.embed(self)?;
        let four = self.rational(Rational::from_integer(4.into()));
        let disc = b.clone() * b.clone() - four * c.clone();
        if let Some(s) = self.sqrt(&disc)? {
            let half = self.rational(Rational::new(1.into(), 2.into()));
            return Ok(Adjunction::AlreadySplit(half * (s - b)));
        }
        let mut steps = self.steps.to_vec();
        steps.push(Step {
            name: name.to_string(),
            b: b.coords().to_vec(),
            c: c.coords().to_vec(),
        });
        Ok(Adjunction::Extended(FieldTower { steps: Arc::from(steps) }))
    }

    /// Convenience wrapper that insists on a genuine extension.
    pub fn extend(&self, name: &str, b: &FieldElement, c: &FieldElement) -> Result<FieldTower, FieldError> {
        match self.adjoin_quadratic(name, b, c)? {
            Adjunction::Extended(t) => Ok(t),
            Adjunction::AlreadySplit(w) => Err(FieldError::Reducible {
                name: name.to_string(),
                root: w.to_string(),
            }),
        }
    }

    /// Square root of `a` inside this tower. `a` must live in a prefix.
    pub fn sqrt(&self, a: &FieldElement) -> Result<Option<FieldElement>, FieldError> {
        let a = a.embed(self)?;
        Ok(coords::sqrt(&self.steps, a.coords()).map(|v| FieldElement::from_parts(self.clone(), v)))
    }

    /// Decides whether `a` is a square in this tower.
    pub fn is_square(&self, a: &FieldElement) -> Result<SquareTest, FieldError> {
        Ok(match self.sqrt(a)? {
            Some(w) => SquareTest::Yes(w),
            None => SquareTest::No,
        })
    }

    /// A generator name of the form `prefix<k>` not yet used.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| !self.has_generator(n))
            .expect("unbounded name supply")
    }
}

/// Outcome of an exact squareness decision in a tower.
#[derive(Clone, Debug, PartialEq)]
pub enum SquareTest {
    Yes(FieldElement),
    No,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.steps, &other.steps) || self.steps[..] == other.steps[..]
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "Q");
        }
        let names: Vec<&str> = self.generator_names().collect();
        write!(f, "Q({})", names.join(", "))
    }
}
