use num_traits::{One, Zero};

use super::*;
use crate::field::{FieldElement, FieldTower};
use crate::poly::Polynomial;
use crate::scalar::{int, rat, Rational};

type Rf = RationalFunction<FieldElement>;
type Ps = PuiseuxSeries<FieldElement>;

fn q() -> FieldTower {
    FieldTower::rationals()
}

fn poly(cs: &[i64]) -> Polynomial<FieldElement> {
    Polynomial::new(cs.iter().map(|&c| FieldElement::rational(int(c))).collect())
}

fn rf(num: &[i64], den: &[i64], place: &PlaceTag<FieldElement>) -> Rf {
    Rf::new(poly(num), poly(den), place.clone(), q()).unwrap()
}

fn golden_beta() -> FieldTower {
    let q = q();
    let a = q.extend("alpha", &q.rational(int(-1)), &q.rational(int(-1))).unwrap();
    let alpha = a.generator("alpha").unwrap();
    a.extend("beta", &a.zero(), &alpha).unwrap()
}

#[test]
fn cube_root_simplification() {
    let p = PlaceTag::origin(3);
    let f = rf(&[1, 1, -2], &[1, -1], &p);
    assert_eq!(f, rf(&[1, 2], &[1], &p));
    assert_eq!(f.numerator(), &poly(&[1, 2]));
    assert!(f.denominator().degree() == Some(0));
}

#[test]
fn identities() {
    let p = PlaceTag::origin(1);
    let f = rf(&[2, 0, 1], &[0, 3, 1], &p);
    let one = Rf::constant(FieldElement::one(), p.clone(), q()).unwrap();
    assert_eq!(f.checked_mul(&one.checked_div(&f).unwrap()).unwrap(), one);
    assert!(f.checked_sub(&f).unwrap().is_zero());
    assert_eq!(f.checked_div(&Rf::zero(p.clone(), q())).unwrap_err(), SeriesError::DivisionByZero);
    let other = rf(&[1], &[1], &PlaceTag::origin(2));
    assert_eq!(f.checked_add(&other).unwrap_err(), SeriesError::PlaceMismatch);
}

#[test]
fn orders() {
    let p2 = PlaceTag::origin(2);
    assert_eq!(rf(&[0, 0, 1, 0, 0, 0, -1], &[1], &p2).order_at_zero().unwrap(), 2);
    assert_eq!(rf(&[1], &[0, 0, 0, 1], &p2).order_at_zero().unwrap(), -3);
    assert_eq!(Rf::zero(p2, q()).order_at_zero().unwrap_err(), SeriesError::ZeroFunction);
}

#[test]
fn golden_valuation_is_one_over_2n() {
    let tower = golden_beta();
    let alpha = tower.generator("alpha").unwrap();
    let beta = tower.generator("beta").unwrap();
    for n in 1..=3u32 {
        let place = PlaceTag::origin(2 * n);
        let t = Rf::t_value(place.clone(), tower.clone()).unwrap();
        let r = Rf::param(place.clone(), tower.clone());
        let c = |k: &FieldElement| Rf::constant(k.clone(), place.clone(), tower.clone()).unwrap();
        let u = c(&beta.checked_inv().unwrap()).checked_add(&r).unwrap();
        let shifted = t.checked_sub(&c(&alpha)).unwrap();
        let g = u
            .powi(2)
            .unwrap()
            .checked_mul(&shifted.powi(2).unwrap())
            .unwrap()
            .checked_sub(&shifted)
            .unwrap();
        assert_eq!(g.order_at_zero().unwrap(), 1);
        assert_eq!(
            is_square_local(&g, SquareMode::OverC).unwrap(),
            LocalSquare::NonSquare(NonSquareCertificate::OddOrder { order: 1, ram: 2 * n })
        );
    }
}

#[test]
fn ramify_substitutes() {
    let p = PlaceTag::origin(1);
    let t = Rf::t_value(p.clone(), q()).unwrap();
    assert_eq!(t.ramify(2), rf(&[0, 0, 1], &[1], &PlaceTag::origin(2)));
    assert_eq!(rf(&[1, 2], &[1], &p).ramify(3), rf(&[1, 0, 0, 2], &[1], &PlaceTag::origin(3)));
    assert_eq!(t.ramify(1), t);
}

#[test]
fn place_substitution() {
    // t at infinity with e = 1 is 1/r; t^2 - t = (1 - r)/r^2
    let p = PlaceTag::infinity(1);
    let f = Rf::from_t_function(&poly(&[0, -1, 1]), &poly(&[1]), p.clone(), q()).unwrap();
    assert_eq!(f, rf(&[1, -1], &[0, 0, 1], &p));
    let shifted = PlaceTag::finite(FieldElement::rational(int(2)), 1);
    let g = Rf::from_t_function(&poly(&[0, 1]), &poly(&[1]), shifted.clone(), q()).unwrap();
    assert_eq!(g, Rf::t_value(shifted.clone(), q()).unwrap());
    assert_eq!(g.order_at_zero().unwrap(), 0);
}

#[test]
fn expansions() {
    let p = PlaceTag::origin(1);
    let geo = rf(&[1], &[1, -1], &p).to_puiseux(4);
    assert_eq!(geo.lead(), Some(0));
    assert_eq!(geo.coeffs(), poly(&[1, 1, 1, 1]).coeffs());
    assert_eq!(geo.precision(), 4);
    let simplified = rf(&[1, 1, -2], &[1, -1], &p).to_puiseux(4);
    assert_eq!(simplified.coeffs(), &[FieldElement::one(), FieldElement::rational(int(2)), FieldElement::zero(), FieldElement::zero()]);
    let inv = rf(&[1], &[0, 1], &p).to_puiseux(3);
    assert_eq!(inv.lead(), Some(-1));
    assert_eq!(inv.coeff(-1), Some(FieldElement::one()));
    assert_eq!(inv.precision(), 2);
}

#[test]
fn series_precision_rules() {
    let p = PlaceTag::origin(2);
    let r = Rf::param(p.clone(), q()).to_puiseux(10);
    let t = r.checked_mul(&r).unwrap();
    assert_eq!(t.lead(), Some(2));
    assert_eq!(t.precision(), 12);
    let one_minus_r = rf(&[1, -1], &[1], &PlaceTag::origin(1)).to_puiseux(6);
    let one = Ps::constant(FieldElement::one(), PlaceTag::origin(1), q(), 6);
    let geo = one.checked_div(&one_minus_r).unwrap();
    assert!(geo.coeffs().iter().all(|c| *c == FieldElement::one()));
    assert_eq!(geo.precision(), 6);
    let z = geo.checked_add(&geo.neg()).unwrap();
    assert!(z.is_zero_to_precision());
    assert_eq!(z.inv().unwrap_err(), SeriesError::DivisionByZeroSeries);
    assert_eq!(z.leading_coefficient().unwrap_err(), SeriesError::PrecisionExhausted);
}

#[test]
fn mixed_ramification_aligns() {
    let a = Rf::param(PlaceTag::origin(2), q()).to_puiseux(5);
    let b = Rf::param(PlaceTag::origin(3), q()).to_puiseux(5);
    let s = a.checked_mul(&b).unwrap();
    assert_eq!(s.place().ram(), 6);
    assert_eq!(s.lead(), Some(5));
}

#[test]
fn square_roots() {
    let p = PlaceTag::origin(1);
    let f = rf(&[1, 2], &[1], &p).to_puiseux(12);
    let (g, dom) = f.sqrt().unwrap();
    assert_eq!(dom, q());
    assert!(g.checked_mul(&g).unwrap().agrees_with(&f));
    assert_eq!(g.coeff(2), Some(FieldElement::rational(rat(-1, 2))));
    assert_eq!(g.coeff(3), Some(FieldElement::rational(rat(1, 2))));

    let r2 = rf(&[0, 0, 1], &[1], &p).to_puiseux(8);
    let (g, _) = r2.sqrt().unwrap();
    assert_eq!(g.lead(), Some(1));
    assert_eq!(g.leading_coefficient().unwrap(), FieldElement::one());

    // sqrt(-t): ramify to e = 2 and adjoin a square root of -1
    let minus_t = Rf::t_value(p.clone(), q()).unwrap().neg().to_puiseux(8);
    let (w, dom) = minus_t.sqrt().unwrap();
    assert_eq!(dom.height(), 1);
    assert_eq!(w.place().ram(), 2);
    assert_eq!(w.lead(), Some(1));
    let i = w.leading_coefficient().unwrap();
    assert_eq!(&i * &i, -FieldElement::one());
    assert!(w.checked_mul(&w).unwrap().agrees_with(&minus_t));
}

#[test]
fn squareness_modes() {
    let t2 = Rf::t_value(PlaceTag::origin(2), q()).unwrap();
    assert!(is_square_local(&t2, SquareMode::OverC).unwrap().is_square());
    let t1 = Rf::t_value(PlaceTag::origin(1), q()).unwrap();
    assert!(!is_square_local(&t1, SquareMode::OverC).unwrap().is_square());
    let minus = t2.neg();
    assert!(is_square_local(&minus, SquareMode::OverC).unwrap().is_square());
    assert!(matches!(
        is_square_local(&minus, SquareMode::Exact).unwrap(),
        LocalSquare::NonSquare(NonSquareCertificate::NonSquareLeading { order: 2, .. })
    ));
    let p = PlaceTag::origin(1);
    let z = Ps::zero(p.clone(), q(), 5);
    assert_eq!(is_square_local(&z, SquareMode::OverC).unwrap(), LocalSquare::Undecided);
    assert_eq!(is_square_local(&Rf::zero(p, q()), SquareMode::OverC).unwrap_err(), SeriesError::ZeroFunction);
}

#[test]
fn rational_coefficients_work_too() {
    let p: PlaceTag<Rational> = PlaceTag::origin(1);
    let f = RationalFunction::new(
        Polynomial::new(vec![int(1), int(1), int(-2)]),
        Polynomial::new(vec![int(1), int(-1)]),
        p,
        (),
    )
    .unwrap();
    assert_eq!(f.numerator().coeffs(), &[int(1), int(2)]);
    assert_eq!(f.to_string(), "1 + 2*r");
}
