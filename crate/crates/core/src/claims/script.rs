//! The line-oriented claim-file format.
//!
//! ```text
//! claim point_sqrt_t
//! adjoin i : i^2 + 1 = 0
//! system:
//!   x^2 - t*u^2 + t = (t^2*u^2 - t)*y^2 != 0
//! place: t = 0 ram 2
//! let x = 0
//! let y = sqrt(-1)
//! expect: pass
//! ```
//!
//! System lines are the indented lines following `system:`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::field::{FieldError, FieldTower};
use crate::orbifold::{Multiplicity, OrbifoldCurve};
use crate::variety::{
    eval, quadratic_coefficients, Equation, Expr, ParseError, ParseErrorKind, Parser, PolyBackend, PolynomialSystem,
    VarietyError, RESERVED,
};
use crate::{FieldElement, Place, PlaceTag};

use super::ClaimKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Pass,
    Fail,
    Lifts,
    Obstructed,
    Square,
    Nonsquare,
    GeneralType,
    NotGeneralType,
}

impl Expect {
    pub fn kind(self) -> ClaimKind {
        match self {
            Expect::Pass | Expect::Fail => ClaimKind::PointVerification,
            Expect::Lifts | Expect::Obstructed => ClaimKind::LiftTest,
            Expect::Square | Expect::Nonsquare => ClaimKind::SquarenessCertificate,
            Expect::GeneralType | Expect::NotGeneralType => ClaimKind::OrbifoldFact,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Expect::Pass => "pass",
            Expect::Fail => "fail",
            Expect::Lifts => "lifts",
            Expect::Obstructed => "obstructed",
            Expect::Square => "square",
            Expect::Nonsquare => "nonsquare",
            Expect::GeneralType => "general_type",
            Expect::NotGeneralType => "not_general_type",
        }
    }
}

impl FromStr for Expect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "pass" => Expect::Pass,
            "fail" => Expect::Fail,
            "lifts" => Expect::Lifts,
            "obstructed" => Expect::Obstructed,
            "square" => Expect::Square,
            "nonsquare" => Expect::Nonsquare,
            "general_type" => Expect::GeneralType,
            "not_general_type" => Expect::NotGeneralType,
            other => return Err(format!("unknown expectation `{other}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    Exact,
    Truncated,
}

impl FromStr for ModeChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(ModeChoice::Exact),
            "truncated" => Ok(ModeChoice::Truncated),
            other => Err(format!("unknown mode `{other}` (expected exact or truncated)")),
        }
    }
}

impl fmt::Display for ModeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeChoice::Exact => "exact",
            ModeChoice::Truncated => "truncated",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaceSpec {
    /// `None` for the place at infinity.
    pub center: Option<Expr>,
    pub ram: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BindingSpec {
    pub var: String,
    pub expr: Expr,
    pub sqrt: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdjoinSpec {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

/// One `claim` block of a claim file.
#[derive(Clone, Debug, PartialEq)]
pub struct ClaimScript {
    pub name: String,
    pub line: usize,
    pub adjoins: Vec<AdjoinSpec>,
    pub tower: FieldTower,
    pub vars: Option<Vec<String>>,
    pub system: Option<PolynomialSystem>,
    pub place: Option<PlaceSpec>,
    pub bindings: Vec<BindingSpec>,
    pub cover: Option<Equation>,
    pub square: Option<Expr>,
    pub orbifold: Option<OrbifoldCurve>,
    pub mode: Option<ModeChoice>,
    pub precision: Option<usize>,
    pub expect: Expect,
}

impl ClaimScript {
    pub fn kind(&self) -> ClaimKind {
        self.expect.kind()
    }

    /// The place with its centre evaluated in the script's tower.
    pub fn resolve_place(&self) -> Result<Place, VarietyError> {
        let spec = self.place.as_ref().expect("validated at parse time");
        match &spec.center {
            None => Ok(PlaceTag::infinity(spec.ram)),
            Some(e) => Ok(PlaceTag::finite(constant_value(e, &self.tower)?, spec.ram)),
        }
    }
}

/// Evaluates a variable-free, `t`-free expression to a field element.
fn constant_value(e: &Expr, tower: &FieldTower) -> Result<FieldElement, VarietyError> {
    let b = PolyBackend { tower, var: "" };
    let p = eval(&b, e)?;
    match p.degree() {
        None => Ok(tower.zero()),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(VarietyError::NotPolynomial("a constant".into())),
    }
}

const KEYWORDS: [&str; 13] = [
    "claim", "adjoin", "vars", "system", "place", "let", "cover", "square", "orbifold", "mode", "precision",
    "expect", "kind",
];

fn keyword_of(line: &str) -> Option<(&'static str, &str)> {
    for k in KEYWORDS {
        if let Some(rest) = line.strip_prefix(k) {
            if rest.is_empty() || rest.starts_with([' ', ':', '\t']) {
                let rest = rest.trim_start();
                let rest = rest.strip_prefix(':').unwrap_or(rest);
                return Some((k, rest));
            }
        }
    }
    None
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, col, ParseErrorKind::Other(msg.into()))
}

fn valid_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Column (1-based) of `sub` inside `line`, which must be a subslice.
fn col_of(line: &str, sub: &str) -> usize {
    let off = sub.as_ptr() as usize - line.as_ptr() as usize;
    line[..off].chars().count() + 1
}

struct Draft {
    name: String,
    line: usize,
    adjoins: Vec<AdjoinSpec>,
    tower: FieldTower,
    vars: Option<Vec<String>>,
    system: Option<PolynomialSystem>,
    place: Option<PlaceSpec>,
    bindings: Vec<BindingSpec>,
    cover: Option<Equation>,
    square: Option<Expr>,
    orbifold: Option<OrbifoldCurve>,
    mode: Option<ModeChoice>,
    precision: Option<usize>,
    expect: Option<Expect>,
    kind: Option<ClaimKind>,
}

impl Draft {
    fn new(name: String, line: usize) -> Self {
        Draft {
            name,
            line,
            adjoins: Vec::new(),
            tower: FieldTower::rationals(),
            vars: None,
            system: None,
            place: None,
            bindings: Vec::new(),
            cover: None,
            square: None,
            orbifold: None,
            mode: None,
            precision: None,
            expect: None,
            kind: None,
        }
    }

    fn finish(mut self) -> Result<ClaimScript, ParseError> {
        let here = |msg: String| err(self.line, 1, msg);
        let expect = self.expect.ok_or_else(|| here(format!("claim `{}` has no `expect:` line", self.name)))?;
        if let Some(k) = self.kind {
            if k != expect.kind() {
                return Err(here(format!("claim `{}`: expectation does not match kind {k}", self.name)));
            }
        }
        if let Some(sys) = self.system.as_mut() {
            sys.finish_variables();
            if let Some(vars) = &self.vars {
                let mut all = vars.clone();
                all.extend(self.cover.iter().flat_map(|c| c.lhs.identifiers()));
                sys.check_declared(&all).map_err(|k| ParseError::new(self.line, 1, k))?;
            }
        }
        match expect.kind() {
            ClaimKind::OrbifoldFact => {
                if self.orbifold.is_none() {
                    return Err(here(format!("claim `{}` needs an `orbifold` line", self.name)));
                }
            }
            kind => {
                if self.place.is_none() {
                    return Err(here(format!("claim `{}` needs a `place:` line", self.name)));
                }
                if kind != ClaimKind::SquarenessCertificate && self.system.is_none() {
                    return Err(here(format!("claim `{}` needs a `system:` block", self.name)));
                }
                if kind == ClaimKind::LiftTest && self.cover.is_none() {
                    return Err(here(format!("claim `{}` needs a `cover:` line", self.name)));
                }
                if kind == ClaimKind::SquarenessCertificate && self.square.is_none() {
                    return Err(here(format!("claim `{}` needs a `square:` line", self.name)));
                }
            }
        }
        Ok(ClaimScript {
            name: self.name,
            line: self.line,
            adjoins: self.adjoins,
            tower: self.tower,
            vars: self.vars,
            system: self.system,
            place: self.place,
            bindings: self.bindings,
            cover: self.cover,
            square: self.square,
            orbifold: self.orbifold,
            mode: self.mode,
            precision: self.precision,
            expect,
        })
    }
}

fn parse_equation(src: &str, line: usize, col: usize) -> Result<Equation, ParseError> {
    let mut p = Parser::new(src, line, col)?;
    let lhs = p.expr()?;
    if !p.eat_eq() {
        let (l, c) = p.position();
        return Err(err(l, c, "expected `=`"));
    }
    let rhs = p.expr()?;
    p.finish()?;
    Ok(Equation { lhs, rhs })
}

fn parse_single_expr(src: &str, line: usize, col: usize) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src, line, col)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// `let` and `square` expressions may use `t`, `r`, tower generators and
/// earlier bindings only.
fn check_known(d: &Draft, e: &Expr, line: usize, col: usize) -> Result<(), ParseError> {
    let known = |n: &str| n == "t" || n == "r" || d.tower.has_generator(n) || d.bindings.iter().any(|b| b.var == n);
    match e.identifiers().into_iter().find(|n| !known(n)) {
        Some(n) => Err(ParseError::new(line, col, ParseErrorKind::Undeclared(n))),
        None => Ok(()),
    }
}

fn parse_adjoin(d: &mut Draft, raw: &str, rest: &str, line: usize) -> Result<(), ParseError> {
    let (name_part, eq_part) = rest
        .split_once(':')
        .ok_or_else(|| err(line, col_of(raw, rest), "expected `adjoin NAME : EQUATION`"))?;
    let name = name_part.trim();
    if !valid_ident(name) || RESERVED.contains(&name) {
        return Err(err(line, col_of(raw, rest), format!("`{name}` cannot name a generator")));
    }
    let eq = parse_equation(eq_part, line, col_of(raw, eq_part))?;
    let col = col_of(raw, eq_part);
    let (b, c) = quadratic_coefficients(&eq.lhs, &eq.rhs, name, &d.tower).map_err(|e| err(line, col, e.to_string()))?;
    d.tower = d.tower.extend(name, &b, &c).map_err(|e: FieldError| err(line, col, e.to_string()))?;
    d.adjoins.push(AdjoinSpec { name: name.to_string(), lhs: eq.lhs, rhs: eq.rhs });
    Ok(())
}

fn parse_place(raw: &str, rest: &str, line: usize) -> Result<PlaceSpec, ParseError> {
    let col = col_of(raw, rest);
    let body = rest.trim();
    let body = body
        .strip_prefix('t')
        .and_then(|b| b.trim_start().strip_prefix('='))
        .ok_or_else(|| err(line, col, "expected `place: t = EXPR ram E`"))?;
    let (center, ram) = match body.rfind(" ram ") {
        Some(i) => (&body[..i], body[i + 5..].trim()),
        None => (body, "1"),
    };
    let ram: u32 = ram
        .parse()
        .ok()
        .filter(|&e| e >= 1)
        .ok_or_else(|| err(line, col_of(raw, ram), "ramification must be a positive integer"))?;
    let center = if center.trim() == "infinity" {
        None
    } else {
        let e = parse_single_expr(center, line, col_of(raw, center))?;
        if let Some(v) = e.identifiers().into_iter().find(|n| n == "t" || n == "r") {
            return Err(err(line, col_of(raw, center), format!("the centre cannot mention `{v}`")));
        }
        Some(e)
    };
    Ok(PlaceSpec { center, ram })
}

fn parse_let(raw: &str, rest: &str, line: usize) -> Result<BindingSpec, ParseError> {
    let (var, rhs) = rest
        .split_once('=')
        .ok_or_else(|| err(line, col_of(raw, rest), "expected `let VAR = EXPR`"))?;
    let name = var.trim();
    if !valid_ident(name) || RESERVED.contains(&name) {
        return Err(err(line, col_of(raw, var), format!("`{name}` cannot be bound")));
    }
    let mut p = Parser::new(rhs, line, col_of(raw, rhs))?;
    let (expr, sqrt) = p.binding_rhs()?;
    p.finish()?;
    Ok(BindingSpec { var: name.to_string(), expr, sqrt })
}

fn parse_orbifold(raw: &str, rest: &str, line: usize) -> Result<OrbifoldCurve, ParseError> {
    let col = col_of(raw, rest);
    let bad = || err(line, col, "expected `orbifold genus G marks [m1, m2, ...]`");
    let body = rest.trim().strip_prefix("genus").ok_or_else(bad)?;
    let (g, marks) = body.split_once("marks").ok_or_else(bad)?;
    let genus: u32 = g.trim().parse().map_err(|_| bad())?;
    let inner = marks.trim().strip_prefix('[').and_then(|m| m.strip_suffix(']')).ok_or_else(bad)?;
    let mut ms = Vec::new();
    for tok in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        ms.push(match tok {
            "inf" => Multiplicity::Infinite,
            n => Multiplicity::Finite(n.parse().ok().filter(|&m| m >= 1).ok_or_else(bad)?),
        });
    }
    OrbifoldCurve::with_multiplicities(genus, &ms).map_err(|e| err(line, col, e.to_string()))
}

/// Parses every claim block in `text`.
pub fn parse_claim_file(text: &str) -> Result<Vec<ClaimScript>, ParseError> {
    let mut out: Vec<ClaimScript> = Vec::new();
    let mut draft: Option<Draft> = None;
    let mut in_system = false;
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = full.split('#').next().unwrap_or("");
        if raw.trim().is_empty() {
            continue;
        }
        let indented = raw.starts_with([' ', '\t']);
        if indented && in_system {
            let d = draft.as_mut().expect("system block belongs to a claim");
            let sys = d.system.as_mut().expect("opened by `system:`");
            let body = raw.trim_start();
            sys.push_line(body, line, col_of(raw, body))?;
            continue;
        }
        in_system = false;
        let body = raw.trim();
        let Some((kw, rest)) = keyword_of(body) else {
            return Err(err(line, col_of(raw, body), format!("unknown directive `{}`", body.split_whitespace().next().unwrap_or(""))));
        };
        let rest_trim = rest.trim();
        if kw == "claim" {
            if let Some(d) = draft.take() {
                out.push(d.finish()?);
            }
            if !valid_ident(rest_trim) {
                return Err(err(line, col_of(raw, rest), format!("invalid claim name `{rest_trim}`")));
            }
            if let Some(prev) = out.iter().find(|c| c.name == rest_trim) {
                return Err(err(line, col_of(raw, rest), format!("duplicate claim name `{rest_trim}` (first at line {})", prev.line)));
            }
            draft = Some(Draft::new(rest_trim.to_string(), line));
            continue;
        }
        let d = draft.as_mut().ok_or_else(|| err(line, 1, "directive outside of a `claim` block"))?;
        match kw {
            "adjoin" => parse_adjoin(d, raw, rest, line)?,
            "vars" => {
                let vs: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                if let Some(v) = vs.iter().find(|v| !valid_ident(v) || RESERVED.contains(&v.as_str())) {
                    return Err(err(line, col_of(raw, rest), format!("`{v}` cannot be a variable")));
                }
                d.vars = Some(vs);
            }
            "system" => {
                let mut sys = PolynomialSystem::parse("", &d.tower)?;
                if !rest_trim.is_empty() {
                    sys.push_line(rest, line, col_of(raw, rest))?;
                }
                d.system = Some(sys);
                in_system = true;
            }
            "place" => d.place = Some(parse_place(raw, rest, line)?),
            "let" => {
                let b = parse_let(raw, rest, line)?;
                check_known(d, &b.expr, line, col_of(raw, rest))?;
                if d.bindings.iter().any(|x| x.var == b.var) {
                    return Err(err(line, col_of(raw, rest), format!("`{}` is bound twice", b.var)));
                }
                d.bindings.push(b);
            }
            "cover" => {
                let eq = parse_equation(rest, line, col_of(raw, rest))?;
                if !matches!(&eq.lhs, Expr::Pow(b, 2) if matches!(b.as_ref(), Expr::Ident(_))) {
                    return Err(err(line, col_of(raw, rest), "a cover must read `w^2 = EXPR`"));
                }
                d.cover = Some(eq);
            }
            "square" => {
                let e = parse_single_expr(rest, line, col_of(raw, rest))?;
                check_known(d, &e, line, col_of(raw, rest))?;
                d.square = Some(e);
            }
            "orbifold" => d.orbifold = Some(parse_orbifold(raw, rest, line)?),
            "mode" => d.mode = Some(rest_trim.parse().map_err(|m: String| err(line, col_of(raw, rest), m))?),
            "precision" => {
                let p: usize = rest_trim
                    .parse()
                    .ok()
                    .filter(|&p| p >= 1)
                    .ok_or_else(|| err(line, col_of(raw, rest), "precision must be a positive integer"))?;
                d.precision = Some(p);
            }
            "expect" => d.expect = Some(rest_trim.parse().map_err(|m: String| err(line, col_of(raw, rest), m))?),
            "kind" => d.kind = Some(rest_trim.parse().map_err(|m: String| err(line, col_of(raw, rest), m))?),
            _ => unreachable!("keyword list"),
        }
    }
    if let Some(d) = draft.take() {
        out.push(d.finish()?);
    }
    Ok(out)
}

impl fmt::Display for ClaimScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim {}", self.name)?;
        for a in &self.adjoins {
            writeln!(f, "adjoin {} : {} = {}", a.name, a.lhs, a.rhs)?;
        }
        if let Some(vs) = &self.vars {
            writeln!(f, "vars: {}", vs.join(", "))?;
        }
        if let Some(sys) = &self.system {
            writeln!(f, "system:")?;
            for l in sys.to_string().lines() {
                writeln!(f, "  {l}")?;
            }
        }
        if let Some(p) = &self.place {
            match &p.center {
                None => writeln!(f, "place: t = infinity ram {}", p.ram)?,
                Some(c) => writeln!(f, "place: t = {c} ram {}", p.ram)?,
            }
        }
        for b in &self.bindings {
            if b.sqrt {
                writeln!(f, "let {} = sqrt({})", b.var, b.expr)?;
            } else {
                writeln!(f, "let {} = {}", b.var, b.expr)?;
            }
        }
        if let Some(c) = &self.cover {
            writeln!(f, "cover: {c}")?;
        }
        if let Some(s) = &self.square {
            writeln!(f, "square: {s}")?;
        }
        if let Some(o) = &self.orbifold {
            writeln!(f, "orbifold {o}")?;
        }
        if let Some(m) = &self.mode {
            writeln!(f, "mode: {m}")?;
        }
        if let Some(p) = &self.precision {
            writeln!(f, "precision: {p}")?;
        }
        writeln!(f, "expect: {}", self.expect.as_str())
    }
}
