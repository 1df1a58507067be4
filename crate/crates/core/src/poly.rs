//! Dense univariate polynomials over an exact [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{is_one, Scalar};

/// Coefficients in increasing degree; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> Polynomial<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(K::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: K, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.push(c);
        Polynomial { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Multiplicity of `x` as a factor; `None` for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Lowest nonzero coefficient.
    pub fn trailing(&self) -> Option<&K> {
        self.order().map(|k| &self.coeffs[k])
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Divides by `x^k`; the caller guarantees `k <= order()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.order().is_none_or(|o| o >= k));
        Polynomial { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Substitutes `x -> x^k`.
    pub fn compose_monomial(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Polynomial { coeffs }
    }

    /// Substitutes `x -> g` (Horner).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// `x^n f(1/x)` with `n = deg f`; reverses the coefficient list.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if is_one(l) => self.clone(),
            Some(l) => {
                let inv = K::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let d_lead_inv = K::one() / divisor.coeffs[d_deg].clone();
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n_deg < d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); n_deg - d_deg + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d_deg].clone() * d_lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Renders with `var` as the indeterminate, in the claim-language syntax.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.to_string();
            let simple = !cs.contains([' ', '*']) || cs.starts_with('-') && !cs[1..].contains([' ', '*']);
            let term = if mono.is_empty() {
                if simple { cs } else { format!("({cs})") }
            } else if is_one(c) {
                mono
            } else if crate::scalar::is_negative_unit(c) {
                format!("-{mono}")
            } else if simple {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            if out.is_empty() {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

impl<K: Scalar> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<K: Scalar> Add for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn add(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<K: Scalar> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn sub(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<K: Scalar> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn mul(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<K: Scalar> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn neg(self) -> Polynomial<K> {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn p(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (1 + r - 2r^2) = (1 - r)(1 + 2r)
        let a = p(&[1, 1, -2]);
        let b = p(&[1, -1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 2]));
        assert!(r.is_zero());
        let g = Polynomial::gcd(&a, &p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(Polynomial::gcd(&p(&[1, 1]), &p(&[1, -1])), p(&[1]));
    }

    #[test]
    fn trimming_and_order() {
        let a = p(&[0, 0, 3, 0, 0]);
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.order(), Some(2));
        assert_eq!(a.shift_down(2), p(&[3]));
        assert_eq!(p(&[1, 2]).compose_monomial(3), p(&[1, 0, 0, 2]));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn composition_and_eval() {
        let f = p(&[1, 0, 1]); // 1 + x^2
        let g = p(&[1, 1]); // 1 + x
        assert_eq!(f.compose(&g), p(&[2, 2, 1]));
        assert_eq!(f.eval(&int(3)), int(10));
        assert_eq!(p(&[1, 2, 3]).reversed(), p(&[3, 2, 1]));
        assert_eq!(g.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 2]).display_with("r"), "1 - r + 2*r^3");
        assert_eq!(p(&[0, -1]).display_with("r"), "-r");
    }
}
