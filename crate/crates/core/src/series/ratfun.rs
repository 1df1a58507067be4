use std::fmt;

use super::place::{Center, PlaceTag};
use super::puiseux::PuiseuxSeries;
use super::{join_domains, SeriesError};
use crate::poly::Polynomial;
use crate::scalar::{is_one, ArithOp, Scalar};

/// An exact quotient of polynomials in the local parameter `r`.
///
/// Kept normalised: the common factor of numerator and denominator is
/// removed and the denominator is monic. The zero function is `0 / 1`.
#[derive(Clone, Debug)]
pub struct RationalFunction<K: Scalar> {
    num: Polynomial<K>,
    den: Polynomial<K>,
    place: PlaceTag<K>,
    domain: K::Domain,
}

fn fold_domain<K: Scalar>(
    mut dom: K::Domain,
    coeffs: &[K],
) -> Result<K::Domain, SeriesError> {
    for c in coeffs {
        dom = join_domains::<K>(&dom, &c.domain())?;
    }
    Ok(dom)
}

impl<K: Scalar> RationalFunction<K> {
    /// `num / den` at `place`. The coefficient field is the join of `domain`
    /// with the fields of every coefficient.
    pub fn new(
        num: Polynomial<K>,
        den: Polynomial<K>,
        place: PlaceTag<K>,
        domain: K::Domain,
    ) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let mut domain = fold_domain::<K>(domain, num.coeffs())?;
        domain = fold_domain::<K>(domain, den.coeffs())?;
        if let Center::Finite(c) = place.center() {
            domain = join_domains::<K>(&domain, &c.domain())?;
        }
        Ok(Self::normalized(num, den, place, domain))
    }

    pub fn from_polynomial(p: Polynomial<K>, place: PlaceTag<K>, domain: K::Domain) -> Result<Self, SeriesError> {
        Self::new(p, Polynomial::one(), place, domain)
    }

    fn normalized(num: Polynomial<K>, den: Polynomial<K>, place: PlaceTag<K>, domain: K::Domain) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Polynomial::one(), place, domain };
        }
        let shift = num.order().unwrap().min(den.order().unwrap());
        let (mut num, mut den) = (num.shift_down(shift), den.shift_down(shift));
        if den.degree() != Some(0) && num.degree() != Some(0) {
            let g = Polynomial::gcd(&num, &den);
            if g.degree() != Some(0) {
                num = num.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        let lead = den.leading().expect("nonzero denominator").clone();
        if !is_one(&lead) {
            let inv = K::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den, place, domain }
    }

    pub fn zero(place: PlaceTag<K>, domain: K::Domain) -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one(), place, domain }
    }

    pub fn constant(c: K, place: PlaceTag<K>, domain: K::Domain) -> Result<Self, SeriesError> {
        Self::new(Polynomial::constant(c), Polynomial::one(), place, domain)
    }

    /// The local parameter `r`.
    pub fn param(place: PlaceTag<K>, domain: K::Domain) -> Self {
        RationalFunction { num: Polynomial::x(), den: Polynomial::one(), place, domain }
    }

    /// The global parameter `t` written in `r`.
    pub fn t_value(place: PlaceTag<K>, domain: K::Domain) -> Result<Self, SeriesError> {
        let e = place.ram() as usize;
        match place.center().clone() {
            Center::Finite(c) => {
                let p = &Polynomial::constant(c) + &Polynomial::monomial(K::one(), e);
                Self::new(p, Polynomial::one(), place, domain)
            }
            Center::Infinity => Self::new(Polynomial::one(), Polynomial::monomial(K::one(), e), place, domain),
        }
    }

    /// Substitutes the place's expression for `t` into `num(t) / den(t)`.
    pub fn from_t_function(
        num: &Polynomial<K>,
        den: &Polynomial<K>,
        place: PlaceTag<K>,
        domain: K::Domain,
    ) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let e = place.ram() as usize;
        match place.center().clone() {
            Center::Finite(c) => {
                let sub = &Polynomial::constant(c) + &Polynomial::monomial(K::one(), e);
                Self::new(num.compose(&sub), den.compose(&sub), place, domain)
            }
            Center::Infinity => {
                // p(r^-e) = r^(-e deg p) * rev(p)(r^e)
                if num.is_zero() {
                    return Ok(Self::zero(place, domain));
                }
                let (n, m) = (num.degree().unwrap(), den.degree().unwrap());
                let mut top = num.reversed().compose_monomial(e);
                let mut bottom = den.reversed().compose_monomial(e);
                if m >= n {
                    top = top.shift_up(e * (m - n));
                } else {
                    bottom = bottom.shift_up(e * (n - m));
                }
                Self::new(top, bottom, place, domain)
            }
        }
    }

    pub fn numerator(&self) -> &Polynomial<K> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<K> {
        &self.den
    }

    pub fn place(&self) -> &PlaceTag<K> {
        &self.place
    }

    pub fn domain(&self) -> &K::Domain {
        &self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Views the function over a larger coefficient field.
    pub fn with_domain(&self, domain: &K::Domain) -> Result<Self, SeriesError> {
        let domain = join_domains::<K>(&self.domain, domain)?;
        Ok(RationalFunction { domain, ..self.clone() })
    }

    fn compatible(&self, other: &Self) -> Result<K::Domain, SeriesError> {
        if self.place != other.place {
            return Err(SeriesError::PlaceMismatch);
        }
        join_domains::<K>(&self.domain, &other.domain)
    }

    pub fn arith(op: ArithOp, f: &Self, g: &Self) -> Result<Self, SeriesError> {
        let domain = f.compatible(g)?;
        let place = f.place.clone();
        let (num, den) = match op {
            ArithOp::Add | ArithOp::Sub => {
                let combine = |a: &Polynomial<K>, b: &Polynomial<K>| {
                    if op == ArithOp::Add { a + b } else { a - b }
                };
                if f.den == g.den {
                    (combine(&f.num, &g.num), f.den.clone())
                } else {
                    (combine(&(&f.num * &g.den), &(&g.num * &f.den)), &f.den * &g.den)
                }
            }
            ArithOp::Mul => (&f.num * &g.num, &f.den * &g.den),
            ArithOp::Div => {
                if g.is_zero() {
                    return Err(SeriesError::DivisionByZero);
                }
                (&f.num * &g.den, &f.den * &g.num)
            }
        };
        Ok(Self::normalized(num, den, place, domain))
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
        RationalFunction { num: -&self.num, ..self.clone() }
    }

    pub fn scale(&self, c: &K) -> Result<Self, SeriesError> {
        let domain = join_domains::<K>(&self.domain, &c.domain())?;
        Ok(Self::normalized(self.num.scale(c), self.den.clone(), self.place.clone(), domain))
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone(), self.place.clone(), self.domain.clone()))
    }

    pub fn powi(&self, n: i64) -> Result<Self, SeriesError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(n.unsigned_abs()).expect("exponent fits in u32");
        // Numerator and denominator stay coprime under powers.
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
            place: base.place,
            domain: base.domain,
        })
    }

    /// `r`-adic order: `ord(num) - ord(den)`.
    pub fn order_at_zero(&self) -> Result<i64, SeriesError> {
        let on = self.num.order().ok_or(SeriesError::ZeroFunction)?;
        let od = self.den.order().expect("nonzero denominator");
        Ok(on as i64 - od as i64)
    }

    /// Coefficient of `r^order` in the expansion at `r = 0`.
    pub fn leading_coefficient(&self) -> Result<K, SeriesError> {
        let a = self.num.trailing().ok_or(SeriesError::ZeroFunction)?;
        let b = self.den.trailing().expect("nonzero denominator");
        Ok(a.clone() / b.clone())
    }

    /// Substitutes `r -> r^k`; the place's ramification is multiplied by `k`.
    pub fn ramify(&self, k: u32) -> Self {
        assert!(k >= 1, "ramification factor must be positive");
        RationalFunction {
            num: self.num.compose_monomial(k as usize),
            den: self.den.compose_monomial(k as usize),
            place: self.place.ramified(k),
            domain: self.domain.clone(),
        }
    }

    /// Expansion at `r = 0` with `terms` coefficients from the leading one.
    /// The zero function becomes a series that is zero modulo `r^terms`.
    pub fn to_puiseux(&self, terms: usize) -> PuiseuxSeries<K> {
        let Some(lead) = self.order_at_zero().ok() else {
            return PuiseuxSeries::zero(self.place.clone(), self.domain.clone(), terms as i64);
        };
        let n = self.num.shift_down(self.num.order().unwrap());
        let d = self.den.shift_down(self.den.order().unwrap());
        let coeffs = power_series_div(n.coeffs(), d.coeffs(), terms);
        PuiseuxSeries::from_terms(self.place.clone(), self.domain.clone(), lead, coeffs, lead + terms as i64)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.degree() == Some(0) {
            return self.num.display_with(var);
        }
        let wrap = |p: &Polynomial<K>| {
            let s = p.display_with(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// First `n` coefficients of `a / b` for power series with `b[0] != 0`.
pub(crate) fn power_series_div<K: Scalar>(a: &[K], b: &[K], n: usize) -> Vec<K> {
    let b0_inv = K::one() / b[0].clone();
    let mut out: Vec<K> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a.get(k).cloned().unwrap_or_else(K::zero);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            if b[j].is_zero() || out[k - j].is_zero() {
                continue;
            }
            acc = acc - b[j].clone() * out[k - j].clone();
        }
        out.push(acc * b0_inv.clone());
    }
    out
}

impl<K: Scalar> PartialEq for RationalFunction<K> {
    fn eq(&self, other: &Self) -> bool {
        self.place == other.place && (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl<K: Scalar> fmt::Display for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("r"))
    }
}
