//! Coordinate-level arithmetic in a quadratic tower.
//!
//! An element of level `h` is a vector of `2^h` rationals in the product
//! basis of the generators: bit `j` of a coordinate index says whether
//! generator `j` occurs in that basis monomial. Splitting the vector in
//! half gives `p + q*theta` with `p`, `q` one level down, which is the
//! shape every routine here recurses on.

use num_traits::{One, Zero};

use super::tower::Step;
use crate::scalar::{rational_sqrt, Rational};

pub(crate) type Coords = Vec<Rational>;

pub(crate) fn is_zero(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Only the constant coordinate may be nonzero.
pub(crate) fn is_rational(a: &[Rational]) -> bool {
    is_zero(&a[1..])
}

pub(crate) fn zeros(len: usize) -> Coords {
    vec![Rational::zero(); len]
}

pub(crate) fn constant(len: usize, q: Rational) -> Coords {
    let mut v = zeros(len);
    v[0] = q;
    v
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg(a: &[Rational]) -> Coords {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn scale(a: &[Rational], s: &Rational) -> Coords {
    a.iter().map(|x| x * s).collect()
}

/// Pads `a` with zeros up to `len` coordinates (embedding into a taller tower).
pub(crate) fn pad(a: &[Rational], len: usize) -> Coords {
    let mut v = a.to_vec();
    v.resize(len, Rational::zero());
    v
}

fn join(low: Coords, high: Coords) -> Coords {
    let mut v = low;
    v.extend(high);
    v
}

pub(crate) fn mul(steps: &[Step], a: &[Rational], b: &[Rational]) -> Coords {
    let Some((last, rest)) = steps.split_last() else {
        return vec![&a[0] * &b[0]];
    };
    if is_rational(a) {
        return scale(b, &a[0]);
    }
    if is_rational(b) {
        return scale(a, &b[0]);
    }
    let half = a.len() / 2;
    let (p1, q1) = a.split_at(half);
    let (p2, q2) = b.split_at(half);
    let q1_zero = is_zero(q1);
    let q2_zero = is_zero(q2);
    match (q1_zero, q2_zero) {
        (true, true) => join(mul(rest, p1, p2), zeros(half)),
        (true, false) => join(mul(rest, p1, p2), mul(rest, p1, q2)),
        (false, true) => join(mul(rest, p1, p2), mul(rest, q1, p2)),
        (false, false) => {
            // theta^2 = -b*theta - c
            let pp = mul(rest, p1, p2);
            let qq = mul(rest, q1, q2);
            let cross = sub(
                &sub(&mul(rest, &add(p1, q1), &add(p2, q2)), &pp),
                &qq,
            );
            let low = sub(&pp, &mul(rest, &last.c, &qq));
            let high = sub(&cross, &mul(rest, &last.b, &qq));
            join(low, high)
        }
    }
}

/// Multiplicative inverse via the conjugate `theta' = -b - theta`.
pub(crate) fn inv(steps: &[Step], a: &[Rational]) -> Option<Coords> {
    let Some((last, rest)) = steps.split_last() else {
        if a[0].is_zero() {
            return None;
        }
        return Some(vec![Rational::one() / &a[0]]);
    };
    if is_rational(a) {
        if a[0].is_zero() {
            return None;
        }
        return Some(constant(a.len(), Rational::one() / &a[0]));
    }
    let half = a.len() / 2;
    let (p, q) = a.split_at(half);
    // (p + q theta)((p - b q) - q theta) = p^2 - b p q + c q^2
    let conj_low = sub(p, &mul(rest, &last.b, q));
    let conj_high = neg(q);
    let norm = add(
        &sub(&mul(rest, p, p), &mul(rest, &mul(rest, &last.b, p), q)),
        &mul(rest, &last.c, &mul(rest, q, q)),
    );
    let norm_inv = inv(rest, &norm)?;
    Some(join(
        mul(rest, &conj_low, &norm_inv),
        mul(rest, &conj_high, &norm_inv),
    ))
}

/// Square root by descent through the tower.
///
/// Writing `theta = delta - b/2` with `delta^2 = D = b^2/4 - c`, an element
/// `P + Q delta` equals `(x + y delta)^2` iff `x^2 + D y^2 = P` and
/// `2xy = Q`. For `Q != 0` this forces the norm `P^2 - D Q^2` to be a square
/// `n^2` one level down and `x^2 = (P + n)/2` or `(P - n)/2`. For `Q = 0`
/// either `P` or `P/D` must be a square one level down.
pub(crate) fn sqrt(steps: &[Step], a: &[Rational]) -> Option<Coords> {
    let Some((last, rest)) = steps.split_last() else {
        return rational_sqrt(&a[0]).map(|s| vec![s]);
    };
    let half = a.len() / 2;
    let (p, q) = a.split_at(half);
    let half_b = scale(&last.b, &Rational::new(1.into(), 2.into()));
    let disc = sub(&mul(rest, &half_b, &half_b), &last.c);
    let big_p = sub(p, &mul(rest, q, &half_b));

    let (x, y) = if is_zero(q) {
        if let Some(x) = sqrt(rest, &big_p) {
            (x, zeros(half))
        } else {
            let ratio = mul(rest, &big_p, &inv(rest, &disc)?);
            (zeros(half), sqrt(rest, &ratio)?)
        }
    } else {
        let norm = sub(&mul(rest, &big_p, &big_p), &mul(rest, &disc, &mul(rest, q, q)));
        let n = sqrt(rest, &norm)?;
        let two = Rational::from_integer(2.into());
        let halve = Rational::new(1.into(), 2.into());
        let mut found = None;
        for cand in [add(&big_p, &n), sub(&big_p, &n)] {
            let x_sq = scale(&cand, &halve);
            if let Some(x) = sqrt(rest, &x_sq) {
                if !is_zero(&x) {
                    let y = mul(rest, q, &inv(rest, &scale(&x, &two))?);
                    found = Some((x, y));
                    break;
                }
            }
        }
        found?
    };
    // x + y delta = (x + y b/2) + y theta
    let root = join(add(&x, &mul(rest, &y, &half_b)), y);
    if mul(steps, &root, &root) == a {
        Some(root)
    } else {
        None
    }
}
