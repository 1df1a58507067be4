use std::collections::BTreeMap;

use serde::Serialize;

use super::eval::{check_even_powers, eval, LocalBackend, LocalValue};
use super::expr::Expr;
use super::point::{Binding, PointAssignment};
use super::system::{Equation, PolynomialSystem};
use super::VarietyError;
use crate::field::FieldTower;
use crate::scalar::{ArithOp, Rational};
use crate::series::{is_square_local, LocalSquare, NonSquareCertificate, SquareMode};
use crate::{FieldElement, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Rational-function arithmetic throughout; zero means zero.
    Exact,
    /// Every binding is expanded to this many terms first.
    Truncated(usize),
}

impl std::fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyMode::Exact => write!(f, "exact"),
            VerifyMode::Truncated(p) => write!(f, "truncated({p})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EquationOutcome {
    ExactZero,
    ZeroToPrecision { precision: i64 },
    Failed { order: i64, valuation: String, leading: String, residual: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum InequationOutcome {
    NonzeroCertified { order: i64, valuation: String, leading: String },
    ZeroDetected { exact: bool, precision: Option<i64> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquationReport {
    pub equation: String,
    /// Product of the variable-free denominators the equation was cleared by.
    pub multiplier: String,
    pub cleared: String,
    pub outcome: EquationOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequationReport {
    pub expression: String,
    pub outcome: InequationOutcome,
}

/// Whether a formal square root exists over the algebraic closure at the
/// point's ramification: its radicand must have even order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SqrtBindingReport {
    pub variable: String,
    pub radicand: String,
    pub order: Option<i64>,
    pub exists: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub place: String,
    pub mode: String,
    pub tower: String,
    pub bindings: Vec<(String, String)>,
    pub equations: Vec<EquationReport>,
    pub inequations: Vec<InequationReport>,
    pub sqrt_bindings: Vec<SqrtBindingReport>,
    /// Smallest precision among truncated results; absent in exact runs.
    pub precision: Option<i64>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn all_exact_zero(&self) -> bool {
        self.equations.iter().all(|e| e.outcome == EquationOutcome::ExactZero)
    }
}

/// Serializable form of a non-square certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    OddOrder { order: i64, ram: u32, valuation: String },
    NonsquareLeading { order: i64, leading: String },
}

impl From<&NonSquareCertificate<FieldElement>> for Certificate {
    fn from(c: &NonSquareCertificate<FieldElement>) -> Self {
        match c {
            NonSquareCertificate::OddOrder { order, ram } => Certificate::OddOrder {
                order: *order,
                ram: *ram,
                valuation: valuation_string(*order, *ram),
            },
            NonSquareCertificate::NonSquareLeading { order, leading } => {
                Certificate::NonsquareLeading { order: *order, leading: leading.to_string() }
            }
        }
    }
}

pub(crate) fn valuation_string(order: i64, ram: u32) -> String {
    Rational::new(order.into(), i64::from(ram).into()).to_string()
}

/// Binding tables ready for evaluation.
struct Prepared {
    values: BTreeMap<String, LocalValue>,
    radicands: BTreeMap<String, LocalValue>,
}

fn prepare(point: &PointAssignment, mode: VerifyMode) -> Result<Prepared, VarietyError> {
    let mut values = BTreeMap::new();
    let mut radicands = BTreeMap::new();
    for (name, b) in &point.bindings {
        let place_ok = |p: &crate::Place, exact: bool| {
            point.place.same_center(p) && if exact { p.ram() == point.place.ram() } else { p.ram().is_multiple_of(point.place.ram()) }
        };
        let (table, f) = match b {
            Binding::Exact(f) => (&mut values, f),
            Binding::FormalSqrt(f) => (&mut radicands, f),
            Binding::Series(s) => {
                if mode == VerifyMode::Exact {
                    return Err(VarietyError::SeriesInExactMode(name.clone()));
                }
                if !place_ok(s.place(), false) {
                    return Err(VarietyError::PlaceMismatch(name.clone()));
                }
                values.insert(name.clone(), LocalValue::Trunc(s.clone()));
                continue;
            }
        };
        if !place_ok(f.place(), true) {
            return Err(VarietyError::PlaceMismatch(name.clone()));
        }
        let v = match mode {
            VerifyMode::Exact => LocalValue::Exact(f.clone()),
            VerifyMode::Truncated(p) => LocalValue::Trunc(f.to_puiseux(p)),
        };
        table.insert(name.clone(), v);
    }
    Ok(Prepared { values, radicands })
}

/// Variable-free divisors and negative-power bases of `e`, each once.
fn denominators(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Int(_) | Expr::Ident(_) => {}
        Expr::Neg(a) => denominators(a, out),
        Expr::Pow(a, k) => {
            if *k < 0 {
                let d = if *k == -1 { (**a).clone() } else { Expr::pow((**a).clone(), -k) };
                if !out.contains(&d) {
                    out.push(d);
                }
            }
            denominators(a, out);
        }
        Expr::Bin(op, a, b) => {
            if *op == ArithOp::Div && !out.contains(b) {
                out.push((**b).clone());
            }
            denominators(a, out);
            denominators(b, out);
        }
    }
}

/// `(multiplier, multiplier * (lhs - rhs))`
pub fn cleared_form(eq: &Equation) -> (Expr, Expr) {
    let mut ds = Vec::new();
    denominators(&eq.lhs, &mut ds);
    denominators(&eq.rhs, &mut ds);
    let diff = eq.difference();
    let Some(first) = ds.first().cloned() else {
        return (Expr::int(1), diff);
    };
    let m = ds.into_iter().skip(1).fold(first, |acc, d| Expr::bin(ArithOp::Mul, acc, d));
    (m.clone(), Expr::bin(ArithOp::Mul, m, diff))
}

fn classify_equation(v: &LocalValue) -> EquationOutcome {
    match v {
        LocalValue::Exact(f) if f.is_zero() => EquationOutcome::ExactZero,
        LocalValue::Trunc(s) if s.is_zero_to_precision() => EquationOutcome::ZeroToPrecision { precision: s.precision() },
        _ => {
            let order = v.order().expect("nonzero");
            EquationOutcome::Failed {
                order,
                valuation: valuation_string(order, v.ram()),
                leading: v.leading().expect("nonzero").to_string(),
                residual: residual_string(v),
            }
        }
    }
}

fn residual_string(v: &LocalValue) -> String {
    match v {
        LocalValue::Exact(f) => f.to_string(),
        LocalValue::Trunc(s) => {
            let lead = s.lead().unwrap_or(0);
            s.truncate(lead + 6).to_string()
        }
    }
}

fn classify_inequation(v: &LocalValue) -> InequationOutcome {
    match v.order() {
        Some(order) => InequationOutcome::NonzeroCertified {
            order,
            valuation: valuation_string(order, v.ram()),
            leading: v.leading().expect("nonzero").to_string(),
        },
        None => InequationOutcome::ZeroDetected { exact: v.is_exact(), precision: v.precision() },
    }
}

fn check_bound(system: &PolynomialSystem, point: &PointAssignment) -> Result<(), VarietyError> {
    if let Some(v) = system.variables.iter().find(|v| !point.bindings.contains_key(*v)) {
        return Err(VarietyError::Unbound(v.clone()));
    }
    let sqrt_vars = point.formal_sqrt_vars();
    for q in &system.equations {
        check_even_powers(&q.lhs, &sqrt_vars)?;
        check_even_powers(&q.rhs, &sqrt_vars)?;
    }
    for e in &system.inequations {
        check_even_powers(e, &sqrt_vars)?;
    }
    Ok(())
}

fn working_tower(system: &PolynomialSystem, point: &PointAssignment) -> Result<FieldTower, VarietyError> {
    system.tower.join(&point.tower).ok_or(VarietyError::TowerMismatch)
}

/// Substitutes the point into every equation and inequation.
pub fn verify_point(
    system: &PolynomialSystem,
    point: &PointAssignment,
    mode: VerifyMode,
) -> Result<VerificationReport, VarietyError> {
    check_bound(system, point)?;
    let tower = working_tower(system, point)?;
    let prep = prepare(point, mode)?;
    let backend = LocalBackend {
        place: point.place.clone(),
        tower: tower.clone(),
        values: &prep.values,
        radicands: &prep.radicands,
    };
    let mut precision: Option<i64> = None;
    let mut track = |v: &LocalValue| {
        if let Some(p) = v.precision() {
            precision = Some(precision.map_or(p, |q: i64| q.min(p)));
        }
    };

    let mut equations = Vec::new();
    for q in &system.equations {
        let (m, cleared) = cleared_form(q);
        let mv = eval(&backend, &m)?;
        let dv = eval(&backend, &q.difference())?;
        let v = backend_mul(&backend, &mv, &dv)?;
        track(&v);
        equations.push(EquationReport {
            equation: q.to_string(),
            multiplier: m.to_string(),
            cleared: cleared.to_string(),
            outcome: classify_equation(&v),
        });
    }
    let mut inequations = Vec::new();
    for e in &system.inequations {
        let v = eval(&backend, e)?;
        track(&v);
        inequations.push(InequationReport { expression: e.to_string(), outcome: classify_inequation(&v) });
    }
    let mut sqrt_bindings = Vec::new();
    for (name, b) in &point.bindings {
        if let Binding::FormalSqrt(g) = b {
            let order = g.order_at_zero().ok();
            sqrt_bindings.push(SqrtBindingReport {
                variable: name.clone(),
                radicand: g.to_string(),
                order,
                exists: order.is_some_and(|o| o % 2 == 0),
            });
        }
    }
    let ok = equations.iter().all(|e| !matches!(e.outcome, EquationOutcome::Failed { .. }))
        && inequations.iter().all(|e| matches!(e.outcome, InequationOutcome::NonzeroCertified { .. }))
        && sqrt_bindings.iter().all(|s| s.exists);
    Ok(VerificationReport {
        place: point.place.to_string(),
        mode: mode.to_string(),
        tower: tower.to_string(),
        bindings: point.describe(),
        equations,
        inequations,
        sqrt_bindings,
        precision,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    })
}

fn backend_mul(b: &LocalBackend<'_>, x: &LocalValue, y: &LocalValue) -> Result<LocalValue, VarietyError> {
    use super::eval::Backend;
    b.arith(ArithOp::Mul, x, y)
}

/// Replaces every formal square root by a truncated series root, growing
/// the coefficient field as needed.
pub fn resolve_sqrt(point: &PointAssignment, terms: usize) -> Result<PointAssignment, VarietyError> {
    let mut out = point.clone();
    let mut tower = point.tower.clone();
    for (name, b) in &point.bindings {
        if let Binding::FormalSqrt(g) = b {
            let g = g.with_domain(&tower)?;
            let (s, dom) = g.to_puiseux(terms).sqrt()?;
            tower = dom;
            out.bindings.insert(name.clone(), Binding::Series(s));
        }
    }
    out.tower = tower;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SquareOutcome {
    /// A square root of the quotient, and the field it lives over.
    Witness { root: Series, tower: FieldTower, order: i64 },
    NonSquare(NonSquareCertificate<FieldElement>),
    Undecided,
}

fn local_square(v: &LocalValue, mode: SquareMode) -> Result<LocalSquare<FieldElement>, VarietyError> {
    Ok(match v {
        LocalValue::Exact(f) => is_square_local(f, mode)?,
        LocalValue::Trunc(s) => is_square_local(s, mode)?,
    })
}

fn witness(v: &LocalValue, order: i64, terms: usize) -> Result<SquareOutcome, VarietyError> {
    let (root, tower) = v.to_series(terms).sqrt()?;
    Ok(SquareOutcome::Witness { root, tower, order })
}

fn square_of(v: &LocalValue, mode: SquareMode, terms: usize) -> Result<SquareOutcome, VarietyError> {
    Ok(match local_square(v, mode)? {
        LocalSquare::Square => witness(v, v.order().expect("nonzero"), terms)?,
        LocalSquare::NonSquare(c) => SquareOutcome::NonSquare(c),
        LocalSquare::Undecided => SquareOutcome::Undecided,
    })
}

fn point_backend_values(
    point: &PointAssignment,
    extra: &PolynomialSystem,
    mode: VerifyMode,
) -> Result<(Prepared, FieldTower), VarietyError> {
    let tower = working_tower(extra, point)?;
    Ok((prepare(point, mode)?, tower))
}

/// Decides whether `lhs / g` is a square at the point; on success returns a
/// truncated root with `terms` coefficients.
pub fn solve_square(
    system: &PolynomialSystem,
    lhs: &Expr,
    g: &Expr,
    point: &PointAssignment,
    mode: SquareMode,
    terms: usize,
) -> Result<SquareOutcome, VarietyError> {
    let (prep, tower) = point_backend_values(point, system, VerifyMode::Exact)?;
    let backend = LocalBackend { place: point.place.clone(), tower, values: &prep.values, radicands: &prep.radicands };
    let a = eval(&backend, lhs)?;
    let b = eval(&backend, g)?;
    if b.is_zero() {
        return Err(VarietyError::ZeroDenominator);
    }
    if a.is_zero() {
        return Err(VarietyError::ZeroValue);
    }
    use super::eval::Backend;
    let q = backend.arith(ArithOp::Div, &a, &b)?;
    square_of(&q, mode, terms)
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome {
    Lifts { root: Series, tower: FieldTower },
    Obstructed(NonSquareCertificate<FieldElement>),
    Undecided,
}

/// The cover variable and radicand of a system whose last equation is
/// `w^2 = g`, together with the base system.
pub fn split_cover(cover: &PolynomialSystem) -> Result<(PolynomialSystem, String, Expr), VarietyError> {
    let (base, last) = cover.without_last_equation().ok_or(VarietyError::NotACover)?;
    let Expr::Pow(b, 2) = &last.lhs else {
        return Err(VarietyError::NotACover);
    };
    let Expr::Ident(w) = b.as_ref() else {
        return Err(VarietyError::NotACover);
    };
    if base.variables.contains(w) || last.rhs.identifiers().contains(w) {
        return Err(VarietyError::NotACover);
    }
    Ok((base, w.clone(), last.rhs))
}

/// Tests whether a point of the base lifts along `w^2 = g`.
///
/// The point must verify on the base system first.
pub fn lift_along_cover(
    cover: &PolynomialSystem,
    point: &PointAssignment,
    mode: VerifyMode,
    square_mode: SquareMode,
    terms: usize,
) -> Result<LiftOutcome, VarietyError> {
    let (base, _, g) = split_cover(cover)?;
    let report = verify_point(&base, point, mode)?;
    if report.verdict != Verdict::Pass {
        return Err(VarietyError::BasePointFails);
    }
    let (prep, tower) = point_backend_values(point, cover, mode)?;
    let backend = LocalBackend { place: point.place.clone(), tower, values: &prep.values, radicands: &prep.radicands };
    let v = eval(&backend, &g)?;
    if v.is_exact() && v.is_zero() {
        return Err(VarietyError::ZeroValue);
    }
    Ok(match square_of(&v, square_mode, terms)? {
        SquareOutcome::Witness { root, tower, .. } => LiftOutcome::Lifts { root, tower },
        SquareOutcome::NonSquare(c) => LiftOutcome::Obstructed(c),
        SquareOutcome::Undecided => LiftOutcome::Undecided,
    })
}
