use std::fmt;

use num_integer::Integer;

use super::place::PlaceTag;
use super::ratfun::power_series_div;
use super::{join_domains, SeriesError};
use crate::scalar::{is_negative_unit, is_one, ArithOp, RootExtension, Scalar};

/// Number of coefficients kept by truncated computations unless overridden.
pub const DEFAULT_PRECISION: usize = 40;

/// `sum_k coeffs[k] * r^(lead + k)`, known modulo `r^prec`.
///
/// A nonzero series always has `coeffs[0] != 0` and exactly
/// `prec - lead` stored coefficients. A series with no nonzero coefficient
/// below `prec` carries the zero flag; it is zero only *to precision*.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries<K: Scalar> {
    place: PlaceTag<K>,
    domain: K::Domain,
    lead: i64,
    coeffs: Vec<K>,
    prec: i64,
    zero: bool,
}

impl<K: Scalar> PuiseuxSeries<K> {
    /// Builds `sum coeffs[k] r^(lead+k) + O(r^prec)`, skipping leading zeros.
    pub fn from_terms(place: PlaceTag<K>, domain: K::Domain, lead: i64, coeffs: Vec<K>, prec: i64) -> Self {
        let skip = coeffs.iter().position(|c| !c.is_zero());
        match skip {
            Some(s) if lead + (s as i64) < prec => {
                let lead = lead + s as i64;
                let n = (prec - lead) as usize;
                let mut cs: Vec<K> = coeffs.into_iter().skip(s).take(n).collect();
                cs.resize(n, K::zero());
                PuiseuxSeries { place, domain, lead, coeffs: cs, prec, zero: false }
            }
            _ => Self::zero(place, domain, prec),
        }
    }

    /// Zero modulo `r^prec`.
    pub fn zero(place: PlaceTag<K>, domain: K::Domain, prec: i64) -> Self {
        PuiseuxSeries { place, domain, lead: prec, coeffs: Vec::new(), prec, zero: true }
    }

    pub fn constant(c: K, place: PlaceTag<K>, domain: K::Domain, prec: i64) -> Self {
        let domain = K::join(&domain, &c.domain()).unwrap_or(domain);
        Self::from_terms(place, domain, 0, vec![c], prec)
    }

    pub fn place(&self) -> &PlaceTag<K> {
        &self.place
    }

    pub fn domain(&self) -> &K::Domain {
        &self.domain
    }

    /// `r`-order of the first known nonzero term; `None` when zero to precision.
    pub fn lead(&self) -> Option<i64> {
        (!self.zero).then_some(self.lead)
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Number of known coefficients starting at the leading term.
    pub fn relative_precision(&self) -> i64 {
        if self.zero { 0 } else { self.prec - self.lead }
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.zero
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `r^k`, or `None` when `k` is beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<K> {
        if k >= self.prec {
            return None;
        }
        if self.zero || k < self.lead {
            return Some(K::zero());
        }
        Some(self.coeffs[(k - self.lead) as usize].clone())
    }

    pub fn leading_coefficient(&self) -> Result<K, SeriesError> {
        if self.zero {
            return Err(SeriesError::PrecisionExhausted);
        }
        Ok(self.coeffs[0].clone())
    }

    /// The order used by precision propagation: `lead`, or `prec` for zero.
    fn effective_lead(&self) -> i64 {
        if self.zero { self.prec } else { self.lead }
    }

    /// Substitutes `r -> r^k`.
    pub fn ramify(&self, k: u32) -> Self {
        assert!(k >= 1, "ramification factor must be positive");
        if k == 1 {
            return self.clone();
        }
        let kk = k as i64;
        let place = self.place.ramified(k);
        if self.zero {
            return Self::zero(place, self.domain.clone(), self.prec * kk);
        }
        let mut cs = vec![K::zero(); self.coeffs.len() * k as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            cs[i * k as usize] = c.clone();
        }
        Self::from_terms(place, self.domain.clone(), self.lead * kk, cs, self.prec * kk)
    }

    /// Drops every term at or above `r^prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::from_terms(self.place.clone(), self.domain.clone(), self.lead, self.coeffs.clone(), prec)
    }

    /// Brings both operands to a common place and coefficient field.
    fn align(f: &Self, g: &Self) -> Result<(Self, Self, K::Domain), SeriesError> {
        if !f.place.same_center(&g.place) {
            return Err(SeriesError::PlaceMismatch);
        }
        let domain = join_domains::<K>(&f.domain, &g.domain)?;
        let (ef, eg) = (f.place.ram(), g.place.ram());
        if ef == eg {
            return Ok((f.clone(), g.clone(), domain));
        }
        let l = ef.lcm(&eg);
        Ok((f.ramify(l / ef), g.ramify(l / eg), domain))
    }

    pub fn arith(op: ArithOp, f: &Self, g: &Self) -> Result<Self, SeriesError> {
        let (f, g, domain) = Self::align(f, g)?;
        match op {
            ArithOp::Add | ArithOp::Sub => {
                let prec = f.prec.min(g.prec);
                let lo = f.effective_lead().min(g.effective_lead()).min(prec);
                let sign = op == ArithOp::Sub;
                let coeffs = (lo..prec)
                    .map(|k| {
                        let a = f.coeff(k).unwrap();
                        let b = g.coeff(k).unwrap();
                        if sign { a - b } else { a + b }
                    })
                    .collect();
                Ok(Self::from_terms(f.place.clone(), domain, lo, coeffs, prec))
            }
            ArithOp::Mul => Ok(Self::mul_aligned(&f, &g, domain)),
            ArithOp::Div => {
                let gi = g.inv()?;
                Ok(Self::mul_aligned(&f, &gi, domain))
            }
        }
    }

    fn mul_aligned(f: &Self, g: &Self, domain: K::Domain) -> Self {
        let (lf, lg) = (f.effective_lead(), g.effective_lead());
        let prec = (f.prec + lg).min(g.prec + lf);
        if f.zero || g.zero {
            return Self::zero(f.place.clone(), domain, prec);
        }
        let n = (prec - lf - lg) as usize;
        let coeffs = mul_trunc(&f.coeffs, &g.coeffs, n);
        Self::from_terms(f.place.clone(), domain, lf + lg, coeffs, prec)
    }

    pub fn checked_add(&self, g: &Self) -> Result<Self, SeriesError> {
        Self::arith(ArithOp::Add, self, g)
    }

    pub fn checked_sub(&self, g: &Self) -> Result<Self, SeriesError> {
        Self::arith(ArithOp::Sub, self, g)
    }

    pub fn checked_mul(&self, g: &Self) -> Result<Self, SeriesError> {
        Self::arith(ArithOp::Mul, self, g)
    }

    pub fn checked_div(&self, g: &Self) -> Result<Self, SeriesError> {
        Self::arith(ArithOp::Div, self, g)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &K) -> Result<Self, SeriesError> {
        let domain = join_domains::<K>(&self.domain, &c.domain())?;
        if self.zero {
            return Ok(Self::zero(self.place.clone(), domain, self.prec));
        }
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Ok(Self::from_terms(self.place.clone(), domain, self.lead, coeffs, self.prec))
    }

    /// Multiplicative inverse; keeps the relative precision.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.zero {
            return Err(SeriesError::DivisionByZeroSeries);
        }
        let n = self.coeffs.len();
        let coeffs = power_series_div(&[K::one()], &self.coeffs, n);
        Ok(Self::from_terms(self.place.clone(), self.domain.clone(), -self.lead, coeffs, n as i64 - self.lead))
    }

    pub fn powi(&self, n: i64) -> Result<Self, SeriesError> {
        if n == 0 {
            let prec = self.relative_precision();
            return Ok(Self::constant(K::one(), self.place.clone(), self.domain.clone(), prec));
        }
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => Self::mul_aligned(&a, &base, self.domain.clone()),
                });
            }
            e >>= 1;
            if e > 0 {
                base = Self::mul_aligned(&base, &base, self.domain.clone());
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// True when `self - other` is zero to the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        Self::arith(ArithOp::Sub, self, other).is_ok_and(|d| d.zero)
    }
}

impl<K: RootExtension> PuiseuxSeries<K> {
    /// A square root, together with the coefficient field that contains it.
    ///
    /// Odd leading order doubles the ramification first; a leading
    /// coefficient without a root in the current field gets one adjoined.
    /// The unit part is handled by Newton iteration `g <- (g + u/g) / 2`.
    pub fn sqrt(&self) -> Result<(Self, K::Domain), SeriesError>
    where
        SeriesError: From<K::Error>,
    {
        if self.zero {
            return Err(SeriesError::PrecisionExhausted);
        }
        let f = if self.lead % 2 != 0 { self.ramify(2) } else { self.clone() };
        let c0 = f.coeffs[0].clone();
        let (s0, domain) = match c0.sqrt_in(&f.domain) {
            Some(s) => (s, f.domain.clone()),
            None => c0.adjoin_sqrt(&f.domain)?,
        };
        let c0_inv = K::one() / c0;
        let unit: Vec<K> = f.coeffs.iter().map(|c| c.clone() * c0_inv.clone()).collect();
        let g = newton_sqrt_unit(&unit);
        let coeffs = g.into_iter().map(|c| c * s0.clone()).collect();
        let half = f.lead / 2;
        let n = f.coeffs.len() as i64;
        Ok((Self::from_terms(f.place.clone(), domain.clone(), half, coeffs, half + n), domain))
    }
}

/// First `n` coefficients of the product of two power series.
fn mul_trunc<K: Scalar>(a: &[K], b: &[K], n: usize) -> Vec<K> {
    let mut out = vec![K::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Square root of a power series with constant term 1, to `u.len()` terms.
fn newton_sqrt_unit<K: Scalar>(u: &[K]) -> Vec<K> {
    let n = u.len();
    let half = K::one() / K::from_i64(2);
    let mut g = vec![K::one()];
    let mut have = 1;
    while have < n {
        let want = (2 * have).min(n);
        g.resize(want, K::zero());
        let q = power_series_div(&u[..want], &g, want);
        g = g.iter().zip(q).map(|(a, b)| (a.clone() + b) * half.clone()).collect();
        have = want;
    }
    g.truncate(n);
    g
}

impl<K: Scalar> PartialEq for PuiseuxSeries<K> {
    /// Structural equality: same place, precision and known coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.place == other.place
            && self.prec == other.prec
            && self.zero == other.zero
            && (self.zero || (self.lead == other.lead && self.coeffs == other.coeffs))
    }
}

impl<K: Scalar> fmt::Display for PuiseuxSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.lead + i as i64;
            let mono = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            let cs = c.to_string();
            let compound = cs.trim_start_matches('-').contains([' ', '*']);
            let term = if mono.is_empty() {
                if compound { format!("({cs})") } else { cs }
            } else if is_one(c) {
                mono
            } else if is_negative_unit(c) {
                format!("-{mono}")
            } else if compound {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if first {
                f.write_str(&term)?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
            first = false;
        }
        let big_o = match self.prec {
            0 => "O(1)".to_string(),
            1 => "O(r)".to_string(),
            p => format!("O(r^{p})"),
        };
        if first {
            f.write_str(&big_o)
        } else {
            write!(f, " + {big_o}")
        }
    }
}
