use super::lemma91::{lemma91_case, partition_exceptions};
use super::*;
use crate::field::FieldTower;
use crate::scalar::{int, rat};
use crate::series::{NonSquareCertificate, PlaceTag, SquareMode};
use crate::{FieldElement, Place, RatFun};

const SURFACE: &str = "x^2 - t*u^2 + t = (t^2*u^2 - t)*y^2 != 0\n\
                     x^2 - 2*t*u^2 + t^-1 = t*(t^2*u^2 - t)*z^2 != 0";

fn gaussian() -> FieldTower {
    let q = FieldTower::rationals();
    q.extend("i", &q.zero(), &q.one()).unwrap()
}

fn at(src: &str, place: &Place, tower: &FieldTower) -> RatFun {
    eval_at(&parse_expr(src).unwrap(), place, tower).unwrap()
}

fn sqrt_t_point(y2: &str) -> PointAssignment {
    let q = FieldTower::rationals();
    let place = PlaceTag::origin(2);
    PointAssignment::new(place.clone(), q.clone())
        .bind("x", Binding::Exact(at("0", &place, &q)))
        .bind("u", Binding::Exact(at("0", &place, &q)))
        .bind("y", Binding::FormalSqrt(at(y2, &place, &q)))
        .bind("z", Binding::FormalSqrt(at("-1/t^3", &place, &q)))
}

#[test]
fn parses_the_surface_equations() {
    let q = FieldTower::rationals();
    let one = PolynomialSystem::parse("x^2 - t*u^2 + t = (t^2*u^2 - t)*y^2", &q).unwrap();
    assert_eq!(one.equations.len(), 1);
    assert_eq!(one.variables, vec!["u", "x", "y"]);
    let cover = PolynomialSystem::parse("w^2 = t^2*u^2 - t", &q).unwrap();
    assert_eq!(cover.variables, vec!["u", "w"]);
    let err = PolynomialSystem::parse("x^2 = ", &q).unwrap_err();
    assert_eq!((err.line, err.col), (1, 7));
    let full = PolynomialSystem::parse(SURFACE, &q).unwrap();
    assert_eq!(full.equations.len(), 2);
    assert_eq!(full.inequations.len(), 2);
}

#[test]
fn parse_errors_carry_positions() {
    let q = FieldTower::rationals();
    let e = PolynomialSystem::parse("x = 1\ny^(1/2) = 2", &q).unwrap_err();
    assert_eq!(e.line, 2);
    assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);
    let e = PolynomialSystem::parse("1/x = 2", &q).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::VariableDivisor("x".into()));
    let e = PolynomialSystem::parse("x = sqrt(t)", &q).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::SqrtNotAllowed);
    let e = parse_expr("x + Y").unwrap_err();
    assert_eq!((e.col, e.kind), (5, ParseErrorKind::BadChar('Y')));
}

#[test]
fn printer_roundtrips() {
    for src in [
        "-x^2 - -t*(u - 1)/(2*t)",
        "(a + b)^-3*c - (d - (e - f))",
        "-(2*x)^2 + r^2*(t^2*u^2 - t)",
        "1/2/3 - (1/2)/3",
    ] {
        let e = parse_expr(src).unwrap();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{src} -> {e}");
    }
    let q = FieldTower::rationals();
    let sys = PolynomialSystem::parse(SURFACE, &q).unwrap();
    assert_eq!(PolynomialSystem::parse(&sys.to_string(), &q).unwrap(), sys);
}

#[test]
fn sqrt_t_point_verifies_exactly() {
    let sys = PolynomialSystem::parse(SURFACE, &FieldTower::rationals()).unwrap();
    let rep = verify_point(&sys, &sqrt_t_point("-1"), VerifyMode::Exact).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    assert!(rep.all_exact_zero());
    assert_eq!(rep.equations[1].multiplier, "t");
    for p in [5, 20] {
        let rep = verify_point(&sys, &sqrt_t_point("-1"), VerifyMode::Truncated(p)).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.equations.iter().all(|e| matches!(e.outcome, EquationOutcome::ZeroToPrecision { .. })));
    }
}

#[test]
fn wrong_sign_leaves_residual_two_t() {
    let sys = PolynomialSystem::parse(SURFACE, &FieldTower::rationals()).unwrap();
    let rep = verify_point(&sys, &sqrt_t_point("1"), VerifyMode::Exact).unwrap();
    assert_eq!(rep.verdict, Verdict::Fail);
    // t - (-t)*1 = 2t, and t = r^2
    match &rep.equations[0].outcome {
        EquationOutcome::Failed { order, leading, valuation, .. } => {
            assert_eq!(*order, 2);
            assert_eq!(valuation, "1");
            assert_eq!(leading, "2");
        }
        other => panic!("expected failure, got {other:?}"),
    }
}

#[test]
fn odd_power_of_formal_root_is_rejected() {
    let q = FieldTower::rationals();
    let sys = PolynomialSystem::parse("x^2 = y", &q).unwrap();
    let place = PlaceTag::origin(1);
    let point = PointAssignment::new(place.clone(), q.clone())
        .bind("x", Binding::Exact(at("1", &place, &q)))
        .bind("y", Binding::FormalSqrt(at("1", &place, &q)));
    assert_eq!(verify_point(&sys, &point, VerifyMode::Exact).unwrap_err(), VarietyError::OddPowerOccurrence("y".into()));
}

#[test]
fn square_witnesses_and_certificates() {
    let q = FieldTower::rationals();
    let place = PlaceTag::origin(1);
    let sys = PolynomialSystem::parse("0 = 0", &q).unwrap();
    let point = PointAssignment::new(place, q);
    let out = solve_square(&sys, &parse_expr("r").unwrap(), &parse_expr("1").unwrap(), &point, SquareMode::OverC, 8).unwrap();
    assert_eq!(out, SquareOutcome::NonSquare(NonSquareCertificate::OddOrder { order: 1, ram: 1 }));
}

#[test]
fn sqrt_t_point_lifts_to_the_cover() {
    let q = FieldTower::rationals();
    let cover = PolynomialSystem::parse(&format!("{SURFACE}\nw^2 = t^2*u^2 - t"), &q).unwrap();
    let out = lift_along_cover(&cover, &sqrt_t_point("-1"), VerifyMode::Exact, SquareMode::OverC, 10).unwrap();
    let LiftOutcome::Lifts { root, tower } = out else { panic!("expected a lift, got {out:?}") };
    assert_eq!(tower.height(), 1);
    assert_eq!(root.lead(), Some(1));
    let i = root.leading_coefficient().unwrap();
    assert_eq!(&i * &i, -FieldElement::rational(int(1)));

    // the exact witness w = i*r
    let g = gaussian();
    let place = PlaceTag::origin(2);
    let point = sqrt_t_point("-1").bind("w", Binding::Exact(at("i*r", &place, &g)));
    let mut point = point;
    point.tower = g;
    let rep = verify_point(&cover, &point, VerifyMode::Exact).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    assert!(rep.all_exact_zero());
}

#[test]
fn formal_roots_agree_with_series_roots() {
    let sys = PolynomialSystem::parse(SURFACE, &FieldTower::rationals()).unwrap();
    let formal = sqrt_t_point("-1");
    let resolved = resolve_sqrt(&formal, 12).unwrap();
    assert!(resolved.tower.height() >= 1);
    let a = verify_point(&sys, &formal, VerifyMode::Truncated(12)).unwrap();
    let b = verify_point(&sys, &resolved, VerifyMode::Truncated(12)).unwrap();
    assert_eq!(a.verdict, b.verdict);
}

#[test]
fn adjoin_declarations_read_as_quadratics() {
    let q = FieldTower::rationals();
    let lhs = parse_expr("alpha^2 - alpha - 1").unwrap();
    let (b, c) = quadratic_coefficients(&lhs, &Expr::int(0), "alpha", &q).unwrap();
    assert_eq!(b, q.rational(int(-1)));
    assert_eq!(c, q.rational(int(-1)));
    let lhs = parse_expr("2*beta^2").unwrap();
    let (b, c) = quadratic_coefficients(&lhs, &parse_expr("1").unwrap(), "beta", &q).unwrap();
    assert_eq!(b, q.zero());
    assert_eq!(c, q.rational(rat(-1, 2)));
}

#[test]
fn case_analysis() {
    assert_eq!(lemma91_case(&int(-1), &int(0)), 1);
    assert_eq!(lemma91_case(&rat(-1, 2), &int(0)), 3);
    assert_eq!(lemma91_case(&int(0), &int(5)), 8);
    let (n, bad) = partition_exceptions(3, 4);
    assert_eq!(n, 9 * 81);
    assert!(bad.is_empty());
}
