use num_traits::{One, Zero};

use super::*;
use crate::scalar::ArithOp;
use crate::scalar::{int, rat, RootExtension};

fn golden() -> FieldTower {
    let q = FieldTower::rationals();
    q.extend("alpha", &q.rational(int(-1)), &q.rational(int(-1))).unwrap()
}

fn gaussian() -> FieldTower {
    let q = FieldTower::rationals();
    q.extend("i", &q.zero(), &q.one()).unwrap()
}

#[test]
fn golden_ratio_relation() {
    let t = golden();
    let a = t.generator("alpha").unwrap();
    assert_eq!(&a * &a, &a + &t.one());
    // 1/alpha = alpha - 1
    assert_eq!(t.one().checked_div(&a).unwrap(), &a - &t.one());
}

#[test]
fn imaginary_unit() {
    let t = gaussian();
    let i = t.generator("i").unwrap();
    assert_eq!(&i * &i, -t.one());
}

#[test]
fn split_polynomial_reports_root() {
    let q = FieldTower::rationals();
    match q.adjoin_quadratic("s", &q.zero(), &q.rational(int(-4))).unwrap() {
        Adjunction::AlreadySplit(w) => {
            assert_eq!(w, q.rational(int(2)));
        }
        other => panic!("expected split, got {other:?}"),
    }
}

#[test]
fn name_collision_rejected() {
    let t = golden();
    let err = t.adjoin_quadratic("alpha", &t.zero(), &t.one()).unwrap_err();
    assert_eq!(err, FieldError::NameCollision("alpha".into()));
}

#[test]
fn rational_addition() {
    let q = FieldTower::rationals();
    let a = q.rational(rat(1, 3));
    let b = q.rational(rat(1, 6));
    assert_eq!(a + b, q.rational(rat(1, 2)));
}

#[test]
fn division_by_zero_is_an_error() {
    let t = golden();
    let err = FieldElement::arith(ArithOp::Div, &t.one(), &t.zero()).unwrap_err();
    assert_eq!(err, FieldError::DivisionByZero);
}

#[test]
fn embedding_preserves_minimal_polynomial() {
    let t = golden();
    let alpha = t.generator("alpha").unwrap();
    let tt = t.extend("beta", &t.zero(), &alpha).unwrap();
    let lifted = alpha.embed(&tt).unwrap();
    assert_eq!(&lifted * &lifted, &lifted + &tt.one());
    assert_eq!(lifted.tower(), &tt);
    let beta = tt.generator("beta").unwrap();
    assert_eq!(&beta * &beta, -lifted);
}

#[test]
fn embed_across_unrelated_towers_fails() {
    let i = gaussian().generator("i").unwrap();
    assert!(matches!(i.embed(&golden()), Err(FieldError::NotAPrefix { .. })));
    // rationals embed anywhere
    let half = FieldTower::rationals().rational(rat(1, 2));
    assert_eq!(half.embed(&golden()).unwrap(), golden().rational(rat(1, 2)));
}

#[test]
fn square_tests_over_rationals() {
    let q = FieldTower::rationals();
    assert_eq!(q.is_square(&q.rational(rat(4, 9))).unwrap(), SquareTest::Yes(q.rational(rat(2, 3))));
    assert_eq!(q.is_square(&q.rational(int(-1))).unwrap(), SquareTest::No);
}

#[test]
fn square_tests_in_extensions() {
    let t = golden();
    let a = t.generator("alpha").unwrap();
    match t.is_square(&(&a * &a)).unwrap() {
        SquareTest::Yes(w) => assert_eq!(&w * &w, &a * &a),
        SquareTest::No => panic!("alpha^2 is a square"),
    }
    // alpha itself is not a square in Q(alpha): its norm is -1
    assert_eq!(t.is_square(&a).unwrap(), SquareTest::No);
    // 5 = (2 alpha - 1)^2
    let five = t.rational(int(5));
    match t.is_square(&five).unwrap() {
        SquareTest::Yes(w) => assert_eq!(&w * &w, five),
        SquareTest::No => panic!("5 is a square in Q(alpha)"),
    }
    // -1 becomes a square once i is adjoined
    let g = gaussian();
    assert!(matches!(g.is_square(&g.rational(int(-1))).unwrap(), SquareTest::Yes(_)));
}

#[test]
fn square_tests_at_height_two() {
    let t = golden();
    let alpha = t.generator("alpha").unwrap();
    let tt = t.extend("beta", &t.zero(), &alpha).unwrap();
    let beta = tt.generator("beta").unwrap();
    // -alpha = beta^2
    assert!(matches!(tt.is_square(&(-alpha.clone())).unwrap(), SquareTest::Yes(_)));
    let x = &(&beta + &tt.rational(rat(1, 3))) * &(&beta + &alpha);
    let sq = &x * &x;
    match tt.is_square(&sq).unwrap() {
        SquareTest::Yes(w) => assert_eq!(&w * &w, sq),
        SquareTest::No => panic!("constructed square rejected"),
    }
    // beta is not a square: adjoining its root must succeed
    let (root, bigger) = beta.adjoin_sqrt(&tt).unwrap();
    assert_eq!(bigger.height(), 3);
    assert_eq!(&root * &root, beta.embed(&bigger).unwrap());
}

#[test]
fn adjoin_sqrt_of_square_keeps_tower() {
    let q = FieldTower::rationals();
    let (w, t) = q.rational(int(9)).adjoin_sqrt(&q).unwrap();
    assert_eq!(t, q);
    assert_eq!(&w * &w, q.rational(int(9)));
}

#[test]
fn display_is_readable() {
    let t = golden();
    let a = t.generator("alpha").unwrap();
    assert_eq!((&a - &t.one()).to_string(), "-1 + alpha");
    assert_eq!(t.zero().to_string(), "0");
    assert_eq!(t.rational(rat(-1, 2)).to_string(), "-1/2");
    assert!(FieldElement::one().is_one());
    assert!(FieldElement::zero().is_zero());
}
