//! Seeded property suites run as claims.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::FieldTower;
use crate::poly::Polynomial;
use crate::scalar::{int, rat, ArithOp};
use crate::series::PlaceTag;
use crate::variety::{eval, parse_expr, LocalBackend, LocalValue};
use crate::{FieldElement, Place, RatFun};

use super::script::{parse_claim_file, ClaimScript};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub checked: usize,
    /// At most a handful of failing cases, rendered.
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    fn new(property: &str) -> Self {
        PropertyOutcome { property: property.to_string(), checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(case());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// The towers the field suite runs over.
pub fn sample_towers() -> Vec<FieldTower> {
    let q = FieldTower::rationals();
    let z = q.zero();
    let gauss = q.extend("i", &z, &q.one()).unwrap();
    let golden = q.extend("alpha", &q.rational(int(-1)), &q.rational(int(-1))).unwrap();
    let alpha = golden.generator("alpha").unwrap();
    let golden_beta = golden.extend("beta", &golden.zero(), &alpha).unwrap();
    let s2 = q.extend("s", &z, &q.rational(int(-2))).unwrap();
    let s23 = s2.extend("v", &s2.zero(), &s2.rational(int(-3))).unwrap();
    let s235 = s23.extend("p", &s23.zero(), &s23.rational(int(-5))).unwrap();
    vec![q, gauss, golden, golden_beta, s235]
}

fn small(rng: &mut ChaCha8Rng) -> crate::Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// A random element: random rational coordinates on the monomial basis.
pub(crate) fn random_element(tower: &FieldTower, rng: &mut ChaCha8Rng) -> FieldElement {
    let gens: Vec<FieldElement> = tower.generator_names().map(|n| tower.generator(n).unwrap()).collect();
    let mut acc = tower.zero();
    for mask in 0..(1usize << gens.len()) {
        let mut m = tower.rational(small(rng));
        for (k, g) in gens.iter().enumerate() {
            if mask & (1 << k) != 0 {
                m = &m * g;
            }
        }
        acc = &acc + &m;
    }
    acc
}

/// Commutativity, associativity, distributivity, inverses, and the square
/// root of a square, on `triples` random triples per tower.
pub fn field_axioms(triples: usize, seed: u64) -> Vec<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_towers()
        .into_iter()
        .map(|tower| {
            let mut out = PropertyOutcome::new(&format!("field axioms over {tower}"));
            for _ in 0..triples {
                let a = random_element(&tower, &mut rng);
                let b = random_element(&tower, &mut rng);
                let c = random_element(&tower, &mut rng);
                let mut ok = &a + &b == &b + &a
                    && &a * &b == &b * &a
                    && &(&a + &b) + &c == &a + &(&b + &c)
                    && &(&a * &b) * &c == &a * &(&b * &c)
                    && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                    && &a + &(-a.clone()) == tower.zero();
                if !num_traits::Zero::is_zero(&a) {
                    let inv = a.checked_inv().unwrap();
                    ok &= &a * &inv == tower.one();
                    let sq = &a * &a;
                    ok &= sq.sqrt().is_some_and(|r| &r * &r == sq);
                }
                out.record(ok, || format!("a = {a}, b = {b}, c = {c}"));
            }
            out
        })
        .collect()
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Polynomial<crate::Rational> {
    let d = rng.gen_range(0..=max_deg);
    let mut cs: Vec<crate::Rational> = (0..=d).map(|_| small(rng)).collect();
    if num_traits::Zero::is_zero(&cs[d]) {
        cs[d] = int(1);
    }
    Polynomial::new(cs)
}

fn random_ratfun(rng: &mut ChaCha8Rng, place: &Place, tower: &FieldTower, nonzero: bool) -> RatFun {
    loop {
        let num = random_poly(rng, 4);
        let mut den = random_poly(rng, 3);
        if den.is_zero() {
            den = Polynomial::one();
        }
        if nonzero && num.is_zero() {
            continue;
        }
        let lift = |p: &Polynomial<crate::Rational>| {
            Polynomial::new(p.coeffs().iter().map(|c| tower.rational(c.clone())).collect())
        };
        let shift = rng.gen_range(-2i64..=2);
        let f = RatFun::new(lift(&num), lift(&den), place.clone(), tower.clone()).expect("nonzero denominator");
        let r = RatFun::param(place.clone(), tower.clone());
        return f.checked_mul(&r.powi(shift).unwrap()).unwrap();
    }
}

/// Sampled places: the origin and infinity at several ramifications.
fn sample_place(rng: &mut ChaCha8Rng) -> Place {
    let ram = rng.gen_range(1..=3);
    match rng.gen_range(0..3) {
        0 => PlaceTag::infinity(ram),
        1 => PlaceTag::finite(FieldElement::rational(int(rng.gen_range(-2..=2))), ram),
        _ => PlaceTag::origin(ram),
    }
}

/// `sqrt(f)^2 - f` vanishes to the working precision, for `count` random
/// truncated series.
pub fn sqrt_roundtrip(count: usize, seed: u64, terms: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome::new("sqrt roundtrip");
    let q = FieldTower::rationals();
    for _ in 0..count {
        let place = sample_place(&mut rng);
        let f = random_ratfun(&mut rng, &place, &q, true).to_puiseux(terms);
        let ok = match f.sqrt() {
            Ok((root, _)) => {
                let diff = root.checked_mul(&root).and_then(|sq| sq.checked_sub(&f));
                // no precision lost, measured in units of t
                let fr = i64::from(f.place().ram());
                diff.is_ok_and(|d| {
                    d.is_zero_to_precision() && d.precision() * fr >= f.precision() * i64::from(d.place().ram())
                })
            }
            Err(_) => false,
        };
        out.record(ok, || format!("f = {f} at {place}"));
    }
    out
}

/// Exact evaluation followed by truncation agrees with truncated
/// evaluation, for all four operations on `pairs` random pairs.
pub fn backend_agreement(pairs: usize, seed: u64, terms: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome::new("exact and truncated backends agree");
    let q = FieldTower::rationals();
    let empty = BTreeMap::new();
    for _ in 0..pairs {
        let place = sample_place(&mut rng);
        let f = random_ratfun(&mut rng, &place, &q, false);
        let g = random_ratfun(&mut rng, &place, &q, true);
        for (op, src) in [(ArithOp::Add, "a + b"), (ArithOp::Sub, "a - b"), (ArithOp::Mul, "a*b"), (ArithOp::Div, "a/b")] {
            let expr = parse_expr(src).unwrap();
            let exact: BTreeMap<String, LocalValue> =
                [("a".to_string(), LocalValue::Exact(f.clone())), ("b".to_string(), LocalValue::Exact(g.clone()))].into();
            let trunc: BTreeMap<String, LocalValue> = [
                ("a".to_string(), LocalValue::Trunc(f.to_puiseux(terms))),
                ("b".to_string(), LocalValue::Trunc(g.to_puiseux(terms))),
            ]
            .into();
            let be = LocalBackend { place: place.clone(), tower: q.clone(), values: &exact, radicands: &empty };
            let bt = LocalBackend { place: place.clone(), tower: q.clone(), values: &trunc, radicands: &empty };
            let ok = match (eval(&be, &expr), eval(&bt, &expr)) {
                (Ok(LocalValue::Exact(e)), Ok(LocalValue::Trunc(s))) => {
                    let direct = RatFun::arith(op, &f, &g).ok();
                    direct.as_ref() == Some(&e) && e.to_puiseux(2 * terms + 8).agrees_with(&s)
                }
                _ => false,
            };
            out.record(ok, || format!("f = {f}, g = {g}, op {src} at {place}"));
        }
    }
    out
}

/// Printing a parsed script and parsing it again gives the same script.
pub fn parser_roundtrip(scripts: &[ClaimScript]) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("claim-file printer roundtrip");
    for s in scripts {
        let printed = s.to_string();
        let ok = match parse_claim_file(&printed) {
            Ok(mut again) if again.len() == 1 => {
                again[0].line = s.line;
                again[0] == *s
            }
            _ => false,
        };
        out.record(ok, || printed.clone());
    }
    out
}
