//! Valuation case analysis for `x^2 - t u^2 + t = (t^2 u^2 - t) y^2` and
//! `x^2 - 2 t u^2 + 1/t = t (t^2 u^2 - t) z^2`, and a sampled check that
//! local solutions force `t^2 u^2 - t` to be a square.
//!
//! Valuations are in units of `t`.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::poly::Polynomial;
use crate::scalar::{int, rat, Rational};
use crate::series::{PlaceTag, RationalFunction};

type QFun = RationalFunction<Rational>;

/// The eight case hypotheses, in order, at `(v(u), v(x))`.
pub fn case_predicates(vu: &Rational, vx: &Rational) -> [bool; 8] {
    let half = rat(1, 2);
    let zero = Rational::zero();
    let one = Rational::one();
    let two = int(2);
    let minus_half = -half.clone();
    // v(x^2) < v(t u^2)  <=>  2 v(x) < 1 + 2 v(u)
    let x2_below_tu2 = &two * vx < &one + &two * vu;
    // v(x^2 t) <= 0  <=>  2 v(x) + 1 <= 0
    let x2t_nonpos = &two * vx + &one <= zero;
    let mid = *vu > minus_half && *vu < zero;
    [
        *vu < minus_half,
        *vu == minus_half && *vx > zero,
        *vu == minus_half && *vx == zero,
        *vu == minus_half && *vx < zero,
        mid && x2_below_tu2,
        mid && !x2_below_tu2,
        *vu >= zero && x2t_nonpos,
        *vu >= zero && !x2t_nonpos,
    ]
}

/// The case (1 to 8) whose hypothesis holds at `(v(u), v(x))`.
pub fn lemma91_case(vu: &Rational, vx: &Rational) -> u8 {
    let preds = case_predicates(vu, vx);
    let k = preds.iter().position(|&b| b).expect("the case hypotheses cover the plane");
    k as u8 + 1
}

/// Grid points where the number of true predicates is not exactly one.
pub fn partition_exceptions(max_den: i64, max_num: i64) -> (usize, Vec<(Rational, Rational)>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for du in 1..=max_den {
        for dx in 1..=max_den {
            for nu in -max_num..=max_num {
                for nx in -max_num..=max_num {
                    let (vu, vx) = (rat(nu, du), rat(nx, dx));
                    checked += 1;
                    let hits = case_predicates(&vu, &vx).iter().filter(|&&b| b).count();
                    if hits != 1 {
                        bad.push((vu, vx));
                    }
                }
            }
        }
    }
    (checked, bad)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub ram: u32,
    pub u: String,
    pub x: String,
    pub order_g: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyStats {
    pub samples: usize,
    pub seed: u64,
    /// Samples where both quotients were squares and all constraints held.
    pub premise_held: usize,
    pub per_case: [usize; 8],
    /// Samples whose measured case differed from the stratum drawn.
    pub stratum_mismatches: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Ramification indices at which case `k` has lattice points.
fn allowed_ram(case: u8) -> &'static [u32] {
    match case {
        2..=4 => &[2, 4, 6],
        5 | 6 => &[3, 4, 5, 6],
        _ => &[1, 2, 3, 4, 5, 6],
    }
}

fn small_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        let d: i64 = rng.gen_range(1..=3);
        if !nonzero || n != 0 {
            return rat(n, d);
        }
    }
}

/// `r^ord * (c0 + c1 r + ...)` with a nonzero `c0`.
fn laurent(rng: &mut ChaCha8Rng, ord: i64, place: &PlaceTag<Rational>) -> QFun {
    let extra = rng.gen_range(0..=3);
    let mut cs = vec![small_rational(rng, true)];
    for _ in 0..extra {
        cs.push(small_rational(rng, false));
    }
    let body = Polynomial::new(cs);
    let (num, den) = if ord >= 0 {
        (body.shift_up(ord as usize), Polynomial::one())
    } else {
        (body, Polynomial::monomial(Rational::one(), (-ord) as usize))
    };
    QFun::new(num, den, place.clone(), ()).expect("nonzero denominator")
}

/// Draws `(e, e*v(u), e*v(x))` inside the stratum for `case`.
fn draw_valuations(rng: &mut ChaCha8Rng, case: u8) -> (u32, i64, i64) {
    loop {
        let e = *allowed_ram(case).choose(rng).expect("nonempty");
        let ei = i64::from(e);
        let a = rng.gen_range(-3 * ei..=2 * ei);
        let b = rng.gen_range(-3 * ei..=3 * ei);
        if case_predicates(&rat(a, ei), &rat(b, ei))[case as usize - 1] {
            return (e, a, b);
        }
    }
}

struct Evaluated {
    g: QFun,
    lhs1: QFun,
    lhs2: QFun,
    t: QFun,
}

fn evaluate(u: &QFun, x: &QFun, place: &PlaceTag<Rational>) -> Evaluated {
    let t = QFun::t_value(place.clone(), ()).expect("valid place");
    let c = |n: i64| QFun::constant(int(n), place.clone(), ()).expect("constant");
    let u2 = u.powi(2).unwrap();
    let x2 = x.powi(2).unwrap();
    let tu2 = t.checked_mul(&u2).unwrap();
    let g = tu2.checked_mul(&t).unwrap().checked_sub(&t).unwrap();
    let lhs1 = x2.checked_sub(&tu2).unwrap().checked_add(&t).unwrap();
    let lhs2 = x2
        .checked_sub(&c(2).checked_mul(&tu2).unwrap())
        .unwrap()
        .checked_add(&t.inv().unwrap())
        .unwrap();
    Evaluated { g, lhs1, lhs2, t }
}

/// Stratified random check: whenever `y` and `z` exist over the algebraic
/// closure and the constraints hold, `t^2 u^2 - t` has even order.
pub fn lemma91_property(samples: usize, seed: u64) -> PropertyStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = PropertyStats {
        samples,
        seed,
        premise_held: 0,
        per_case: [0; 8],
        stratum_mismatches: 0,
        counterexamples: Vec::new(),
    };
    for i in 0..samples {
        let case = (i % 8) as u8 + 1;
        let (e, a, b) = draw_valuations(&mut rng, case);
        let place = PlaceTag::origin(e);
        let u = laurent(&mut rng, a, &place);
        let x = laurent(&mut rng, b, &place);
        let ei = i64::from(e);
        let measured = lemma91_case(
            &rat(u.order_at_zero().unwrap(), ei),
            &rat(x.order_at_zero().unwrap(), ei),
        );
        stats.per_case[measured as usize - 1] += 1;
        if measured != case {
            stats.stratum_mismatches += 1;
        }
        let ev = evaluate(&u, &x, &place);
        if ev.g.is_zero() || ev.lhs1.is_zero() || ev.lhs2.is_zero() {
            continue;
        }
        let og = ev.g.order_at_zero().unwrap();
        let o1 = ev.lhs1.order_at_zero().unwrap();
        let o2 = ev.lhs2.order_at_zero().unwrap();
        let ot = ev.t.order_at_zero().unwrap();
        let y_exists = (o1 - og) % 2 == 0;
        let z_exists = (o2 - ot - og) % 2 == 0;
        if !(y_exists && z_exists) {
            continue;
        }
        stats.premise_held += 1;
        if og % 2 != 0 {
            stats.counterexamples.push(Counterexample { ram: e, u: u.to_string(), x: x.to_string(), order_g: og });
        }
    }
    stats
}
