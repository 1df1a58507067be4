use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::series::SquareMode;
use crate::variety::{
    eval, lift_along_cover, solve_square, verify_point, Binding, Certificate, Expr, LiftOutcome,
    LocalBackend, LocalValue, PointAssignment, PolynomialSystem, SquareOutcome, Verdict, VarietyError, VerifyMode,
};

use super::script::{ClaimScript, Expect, ModeChoice};
use super::{Check, Overrides};

/// Evaluates the script's `let` lines in order; later lines may use
/// earlier exact bindings.
pub fn build_point(script: &ClaimScript) -> Result<PointAssignment, VarietyError> {
    let place = script.resolve_place()?;
    let mut point = PointAssignment::new(place.clone(), script.tower.clone());
    let mut values: BTreeMap<String, LocalValue> = BTreeMap::new();
    let empty = BTreeMap::new();
    for b in &script.bindings {
        let backend = LocalBackend { place: place.clone(), tower: script.tower.clone(), values: &values, radicands: &empty };
        let f = match eval(&backend, &b.expr)? {
            LocalValue::Exact(f) => f,
            LocalValue::Trunc(_) => unreachable!("bindings are exact"),
        };
        if b.sqrt {
            point = point.bind(&b.var, Binding::FormalSqrt(f));
        } else {
            values.insert(b.var.clone(), LocalValue::Exact(f.clone()));
            point = point.bind(&b.var, Binding::Exact(f));
        }
    }
    Ok(point)
}

fn verify_mode(script: &ClaimScript, ov: &Overrides) -> VerifyMode {
    let precision = ov.precision.or(script.precision).unwrap_or(super::DEFAULT_PRECISION);
    match ov.mode.or(script.mode).unwrap_or(ModeChoice::Exact) {
        ModeChoice::Exact => VerifyMode::Exact,
        ModeChoice::Truncated => VerifyMode::Truncated(precision),
    }
}

fn expected_verdict(got: Verdict, want: Verdict) -> Verdict {
    if got == want {
        Verdict::Pass
    } else if got == Verdict::Undecided {
        Verdict::Undecided
    } else {
        Verdict::Fail
    }
}

fn certificate_json(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificates serialize")
}

/// The checks a script contributes to its claim. Errors become failing
/// checks carrying the message.
pub fn run_script(script: &ClaimScript, ov: &Overrides) -> Vec<Check> {
    match run_inner(script, ov) {
        Ok(c) => c,
        Err(e) => vec![Check::new(
            &script.name,
            Verdict::Fail,
            format!("error: {e}"),
            json!({ "error": e.to_string(), "script": script.to_string() }),
        )],
    }
}

fn cover_system(script: &ClaimScript) -> PolynomialSystem {
    let mut sys = script.system.clone().expect("validated at parse time");
    sys.equations.push(script.cover.clone().expect("validated at parse time"));
    sys.finish_variables();
    sys
}

fn run_inner(script: &ClaimScript, ov: &Overrides) -> Result<Vec<Check>, VarietyError> {
    let name = script.name.as_str();
    let precision = ov.precision.or(script.precision).unwrap_or(super::DEFAULT_PRECISION);
    let mode = verify_mode(script, ov);
    match script.expect {
        Expect::Pass | Expect::Fail => {
            let sys = script.system.as_ref().expect("validated at parse time");
            let point = build_point(script)?;
            let report = verify_point(sys, &point, mode)?;
            let want = if script.expect == Expect::Pass { Verdict::Pass } else { Verdict::Fail };
            let verdict = expected_verdict(report.verdict, want);
            let summary = format!(
                "verification {} in {mode} mode (expected {}) at {}",
                report.verdict,
                want,
                report.place
            );
            let evidence = json!({ "script": script.to_string(), "report": report });
            Ok(vec![Check::new(name, verdict, summary, evidence)])
        }
        Expect::Lifts | Expect::Obstructed => {
            let point = build_point(script)?;
            let sys = cover_system(script);
            let out = lift_along_cover(&sys, &point, mode, SquareMode::OverC, precision)?;
            let cover = script.cover.as_ref().expect("validated").to_string();
            let (got, summary, evidence) = match &out {
                LiftOutcome::Lifts { root, tower } => (
                    Expect::Lifts,
                    format!("{cover} has a local solution w = {}", short(&root.to_string())),
                    json!({ "outcome": "lifts", "root": root.to_string(), "tower": tower.to_string() }),
                ),
                LiftOutcome::Obstructed(c) => {
                    let c = Certificate::from(c);
                    (
                        Expect::Obstructed,
                        format!("{cover} is obstructed: {}", describe_certificate(&c)),
                        json!({ "outcome": "obstructed", "certificate": certificate_json(&c) }),
                    )
                }
                LiftOutcome::Undecided => {
                    let ev = json!({ "outcome": "undecided", "precision": precision });
                    return Ok(vec![Check::new(name, Verdict::Undecided, format!("{cover}: undecided"), ev)]);
                }
            };
            let evidence = json!({ "script": script.to_string(), "bindings": point.describe(), "result": evidence });
            Ok(vec![Check::holds(name, got == script.expect, summary, evidence)])
        }
        Expect::Square | Expect::Nonsquare => {
            let point = build_point(script)?;
            let empty = PolynomialSystem::parse("", &script.tower).expect("empty system");
            let target = script.square.as_ref().expect("validated");
            let out = solve_square(&empty, target, &Expr::int(1), &point, SquareMode::OverC, precision)?;
            let (got, summary, evidence) = match &out {
                SquareOutcome::Witness { root, order, .. } => (
                    Expect::Square,
                    format!("{target} is a square, order {order}"),
                    json!({ "outcome": "square", "order": order, "root": root.to_string() }),
                ),
                SquareOutcome::NonSquare(c) => {
                    let c = Certificate::from(c);
                    (
                        Expect::Nonsquare,
                        format!("{target} is not a square: {}", describe_certificate(&c)),
                        json!({ "outcome": "nonsquare", "certificate": certificate_json(&c) }),
                    )
                }
                SquareOutcome::Undecided => {
                    let ev = json!({ "outcome": "undecided", "precision": precision });
                    return Ok(vec![Check::new(name, Verdict::Undecided, format!("{target}: undecided"), ev)]);
                }
            };
            let evidence = json!({ "script": script.to_string(), "bindings": point.describe(), "result": evidence });
            Ok(vec![Check::holds(name, got == script.expect, summary, evidence)])
        }
        Expect::GeneralType | Expect::NotGeneralType => {
            let c = script.orbifold.as_ref().expect("validated");
            let gt = c.is_general_type();
            let want = script.expect == Expect::GeneralType;
            let summary = format!("{c}: degree {}, general type {gt}", c.degree());
            let evidence = json!({
                "curve": c.to_string(),
                "degree": c.degree().to_string(),
                "general_type": gt,
            });
            Ok(vec![Check::holds(name, gt == want, summary, evidence)])
        }
    }
}

pub(crate) fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::OddOrder { order, ram, valuation } => {
            format!("odd order {order} at ramification {ram} (valuation {valuation})")
        }
        Certificate::NonsquareLeading { order, leading } => format!("order {order}, leading coefficient {leading} has no root"),
    }
}

pub(crate) fn short(s: &str) -> String {
    if s.chars().count() <= 60 {
        s.to_string()
    } else {
        format!("{}...", s.chars().take(57).collect::<String>())
    }
}
