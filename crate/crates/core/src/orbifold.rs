//! Orbifold curves and fibre-multiplicity profiles.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    /// `1 - 1/m`, with `1` for an infinite mark.
    pub fn contribution(self) -> Rational {
        match self {
            Multiplicity::Finite(m) => Rational::one() - Rational::new(1.into(), m.into()),
            Multiplicity::Infinite => Rational::one(),
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("mark label `{0}` is used twice")]
    DuplicateLabel(String),
    #[error("replacement multiplicity {0} is below 2")]
    ReplacementTooSmall(u32),
    #[error("a multiplicity profile needs at least one generator")]
    EmptyProfile,
    #[error("pullback needs a positive degree")]
    ZeroDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mark {
    pub label: String,
    pub multiplicity: Multiplicity,
}

/// A curve of genus `g` with marked points of given multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldCurve {
    genus: u32,
    marks: Vec<Mark>,
}

impl OrbifoldCurve {
    pub fn new(genus: u32, marks: Vec<Mark>) -> Result<Self, OrbifoldError> {
        for (i, m) in marks.iter().enumerate() {
            if m.multiplicity == Multiplicity::Finite(0) {
                return Err(OrbifoldError::ZeroMultiplicity);
            }
            if marks[..i].iter().any(|n| n.label == m.label) {
                return Err(OrbifoldError::DuplicateLabel(m.label.clone()));
            }
        }
        Ok(OrbifoldCurve { genus, marks })
    }

    /// Marks labelled `p1, p2, ...` in order.
    pub fn with_multiplicities(genus: u32, ms: &[Multiplicity]) -> Result<Self, OrbifoldError> {
        let marks = ms
            .iter()
            .enumerate()
            .map(|(i, &m)| Mark { label: format!("p{}", i + 1), multiplicity: m })
            .collect();
        Self::new(genus, marks)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn multiplicities(&self) -> Vec<Multiplicity> {
        self.marks.iter().map(|m| m.multiplicity).collect()
    }

    /// `2g - 2 + sum (1 - 1/m)`.
    pub fn degree(&self) -> Rational {
        let base = int(2 * i64::from(self.genus) - 2);
        self.marks.iter().fold(base, |acc, m| acc + m.multiplicity.contribution())
    }

    pub fn is_general_type(&self) -> bool {
        self.degree() > Rational::zero()
    }

    /// Adds one mark; the degree grows by exactly `1 - 1/m`.
    pub fn with_mark(&self, label: &str, m: Multiplicity) -> Result<Self, OrbifoldError> {
        let mut marks = self.marks.clone();
        marks.push(Mark { label: label.to_string(), multiplicity: m });
        Self::new(self.genus, marks)
    }

    /// Replaces every infinite multiplicity by `replacement`.
    pub fn perturb_finite(&self, replacement: u32) -> Result<Self, OrbifoldError> {
        if replacement < 2 {
            return Err(OrbifoldError::ReplacementTooSmall(replacement));
        }
        let marks = self
            .marks
            .iter()
            .map(|m| Mark {
                label: m.label.clone(),
                multiplicity: match m.multiplicity {
                    Multiplicity::Infinite => Multiplicity::Finite(replacement),
                    finite => finite,
                },
            })
            .collect();
        Ok(OrbifoldCurve { genus: self.genus, marks })
    }
}

impl fmt::Display for OrbifoldCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.marks.iter().map(|m| m.multiplicity.to_string()).collect();
        write!(f, "genus {} marks [{}]", self.genus, ms.join(", "))
    }
}

/// Default finite value substituted for infinite multiplicities.
pub const DEFAULT_REPLACEMENT: u32 = 7;

/// Orbifold base of the pullback of the double-cover family along a map
/// of degree `d` from a genus-`g` curve that is étale over the fibre with
/// multiplicity two: `d` marks of multiplicity 2.
///
/// Takes as given that every other fibre has a reduced component.
pub fn pullback_half_marks(genus: u32, d: u32) -> Result<OrbifoldCurve, OrbifoldError> {
    if d == 0 {
        return Err(OrbifoldError::ZeroDegree);
    }
    OrbifoldCurve::with_multiplicities(genus, &vec![Multiplicity::Finite(2); d as usize])
}

pub const PULLBACK_ASSUMPTION: &str =
    "fibres away from the multiplicity-two fibre have a reduced component (taken as given)";

/// Multiplicities `a_i` of the components of a fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    generators: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileStats {
    pub inf: u32,
    pub gcd: u32,
    pub index: u32,
}

impl ProfileStats {
    pub fn inf_multiple(&self) -> bool {
        self.inf >= 2
    }

    pub fn divisible(&self) -> bool {
        self.gcd >= 2
    }
}

impl MultiplicityProfile {
    pub fn new(generators: Vec<u32>) -> Result<Self, OrbifoldError> {
        if generators.is_empty() {
            return Err(OrbifoldError::EmptyProfile);
        }
        if generators.contains(&0) {
            return Err(OrbifoldError::ZeroMultiplicity);
        }
        Ok(MultiplicityProfile { generators })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Minimum, gcd, and the index (equal to the gcd).
    pub fn stats(&self) -> ProfileStats {
        let inf = *self.generators.iter().min().expect("nonempty");
        let gcd = self.generators.iter().fold(0u32, |g, &a| g.gcd(&a));
        ProfileStats { inf, gcd, index: gcd }
    }

    /// Whether `m` is a sum of generators (with repetition).
    pub fn semigroup_contains(&self, m: u32) -> bool {
        let m = m as usize;
        let mut reach = vec![false; m + 1];
        reach[0] = true;
        for k in 1..=m {
            reach[k] = self.generators.iter().any(|&a| (a as usize) <= k && reach[k - a as usize]);
        }
        reach[m]
    }

    /// Members of the semigroup up to `bound`.
    pub fn semigroup_up_to(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&m| self.semigroup_contains(m)).collect()
    }
}

/// For `a < m < 2a`, `m` is not a sum of two or more elements that are
/// each at least `a`, so a local point of degree `m` forces a component of
/// multiplicity exactly `m`.
pub fn forced_component(a: u32, m: u32) -> bool {
    a < m && m < 2 * a
}

/// Criterion for a set of components through one point: a local point of
/// degree `m` can pass through their intersection only if `m` lies in the
/// semigroup generated by their multiplicities.
pub fn snc_point_admits(component_multiplicities: &[u32], m: u32) -> bool {
    MultiplicityProfile::new(component_multiplicities.to_vec()).is_ok_and(|p| p.semigroup_contains(m))
}

/// Nonempty subsets of `multiplicities` (as index masks) whose semigroup
/// contains `m`.
pub fn admissible_subsets(multiplicities: &[u32], m: u32) -> Vec<Vec<u32>> {
    let n = multiplicities.len();
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).map(|i| multiplicities[i]).collect::<Vec<_>>())
        .filter(|s| snc_point_admits(s, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn curve(g: u32, ms: &[u32]) -> OrbifoldCurve {
        let ms: Vec<Multiplicity> = ms.iter().map(|&m| if m == 0 { Multiplicity::Infinite } else { Multiplicity::Finite(m) }).collect();
        OrbifoldCurve::with_multiplicities(g, &ms).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(curve(0, &[2, 2, 2, 2, 2]).degree(), rat(1, 2));
        assert_eq!(curve(0, &[2, 2, 2, 2]).degree(), int(0));
        assert_eq!(curve(1, &[]).degree(), int(0));
        assert!(curve(2, &[]).is_general_type());
        assert!(!curve(0, &[2, 2, 2, 2]).is_general_type());
    }

    #[test]
    fn pullbacks() {
        let c = pullback_half_marks(0, 5).unwrap();
        assert_eq!(c.degree(), rat(1, 2));
        assert!(c.is_general_type());
        assert_eq!(pullback_half_marks(1, 1).unwrap().degree(), rat(1, 2));
        assert_eq!(pullback_half_marks(0, 1).unwrap().degree(), rat(-3, 2));
        assert_eq!(pullback_half_marks(0, 0).unwrap_err(), OrbifoldError::ZeroDegree);
    }

    #[test]
    fn perturbation() {
        let c = curve(0, &[0, 0, 2]).perturb_finite(DEFAULT_REPLACEMENT).unwrap();
        assert_eq!(c, curve(0, &[7, 7, 2]));
        assert_eq!(c.degree(), rat(3, 14));
        assert_eq!(curve(1, &[0]).perturb_finite(7).unwrap().degree(), rat(6, 7));
        assert_eq!(curve(0, &[2, 3]).perturb_finite(7).unwrap(), curve(0, &[2, 3]));
        assert_eq!(curve(0, &[0]).perturb_finite(1).unwrap_err(), OrbifoldError::ReplacementTooSmall(1));
    }

    #[test]
    fn profiles() {
        let s = MultiplicityProfile::new(vec![2, 3]).unwrap().stats();
        assert_eq!(s, ProfileStats { inf: 2, gcd: 1, index: 1 });
        assert!(s.inf_multiple() && !s.divisible());
        let s = MultiplicityProfile::new(vec![4, 6]).unwrap().stats();
        assert_eq!(s, ProfileStats { inf: 4, gcd: 2, index: 2 });
        assert_eq!(MultiplicityProfile::new(vec![1]).unwrap().stats(), ProfileStats { inf: 1, gcd: 1, index: 1 });
        assert!(!MultiplicityProfile::new(vec![2, 5]).unwrap().semigroup_contains(3));
        assert!(MultiplicityProfile::new(vec![2, 3]).unwrap().semigroup_contains(7));
        assert!(forced_component(2, 3) && !forced_component(2, 4) && forced_component(3, 5));
        assert_eq!(MultiplicityProfile::new(vec![]).unwrap_err(), OrbifoldError::EmptyProfile);
    }

    #[test]
    fn labels_are_distinct() {
        let m = Mark { label: "a".into(), multiplicity: Multiplicity::Finite(2) };
        assert_eq!(OrbifoldCurve::new(0, vec![m.clone(), m]).unwrap_err(), OrbifoldError::DuplicateLabel("a".into()));
    }

    #[test]
    fn snc_subsets() {
        // through a point on components of multiplicity 2 and 3 only, degree 5 works
        assert!(snc_point_admits(&[2, 3], 5));
        assert!(!snc_point_admits(&[2, 4], 5));
        assert_eq!(admissible_subsets(&[2, 3], 3), vec![vec![3], vec![2, 3]]);
    }
}
