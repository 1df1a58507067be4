use std::fmt;

use super::expr::{Expr, ParseError, ParseErrorKind, Parser, RESERVED};
use crate::field::FieldTower;
use crate::scalar::ArithOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    /// `lhs - rhs`
    pub fn difference(&self) -> Expr {
        Expr::bin(ArithOp::Sub, self.lhs.clone(), self.rhs.clone())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Equations and `!= 0` constraints in the unknowns, with coefficients
/// that are rational functions of `t` over a quadratic tower.
///
/// Divisions and negative powers are only allowed on variable-free
/// subexpressions, so every side is a polynomial in the unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSystem {
    pub tower: FieldTower,
    /// Sorted; every identifier that is not reserved or a generator.
    pub variables: Vec<String>,
    pub equations: Vec<Equation>,
    pub inequations: Vec<Expr>,
}

impl PolynomialSystem {
    /// Parses one equation or inequation per line. A line `A = B != 0`
    /// contributes the equation `A = B` and the constraint `B != 0`.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str, tower: &FieldTower) -> Result<Self, ParseError> {
        let mut sys = PolynomialSystem {
            tower: tower.clone(),
            variables: Vec::new(),
            equations: Vec::new(),
            inequations: Vec::new(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            sys.push_line(body, idx + 1, 1)?;
        }
        sys.finish_variables();
        Ok(sys)
    }

    /// Parses one line of system source at the given position.
    pub(crate) fn push_line(&mut self, src: &str, line: usize, col0: usize) -> Result<(), ParseError> {
        let mut p = Parser::new(src, line, col0)?;
        let (l0, c0) = p.position();
        let lhs = p.expr()?;
        if p.eat_noteq() {
            p.expect_zero()?;
            p.finish()?;
            self.check_shape(&lhs, l0, c0)?;
            self.inequations.push(lhs);
            return Ok(());
        }
        if !p.eat_eq() {
            return Err(ParseError::new(line, p.position().1, ParseErrorKind::Other("expected `=` or `!= 0`".into())));
        }
        let (l1, c1) = p.position();
        let rhs = p.expr()?;
        let nonzero = p.eat_noteq();
        if nonzero {
            p.expect_zero()?;
        }
        p.finish()?;
        self.check_shape(&lhs, l0, c0)?;
        self.check_shape(&rhs, l1, c1)?;
        if nonzero {
            self.inequations.push(rhs.clone());
        }
        self.equations.push(Equation { lhs, rhs });
        Ok(())
    }

    fn is_constant_name(&self, name: &str) -> bool {
        RESERVED.contains(&name) || self.tower.has_generator(name)
    }

    /// Rejects divisors and negative-power bases that mention unknowns.
    fn check_shape(&self, e: &Expr, line: usize, col: usize) -> Result<(), ParseError> {
        let unknown = |x: &Expr| x.identifiers().into_iter().find(|n| !self.is_constant_name(n));
        match e {
            Expr::Int(_) | Expr::Ident(_) => Ok(()),
            Expr::Neg(a) => self.check_shape(a, line, col),
            Expr::Pow(a, k) => {
                if *k < 0 {
                    if let Some(v) = unknown(a) {
                        return Err(ParseError::new(line, col, ParseErrorKind::VariableNegativePower(v)));
                    }
                }
                self.check_shape(a, line, col)
            }
            Expr::Bin(op, a, b) => {
                if *op == ArithOp::Div {
                    if let Some(v) = unknown(b) {
                        return Err(ParseError::new(line, col, ParseErrorKind::VariableDivisor(v)));
                    }
                }
                self.check_shape(a, line, col)?;
                self.check_shape(b, line, col)
            }
        }
    }

    pub(crate) fn finish_variables(&mut self) {
        let mut vars = std::collections::BTreeSet::new();
        for e in self.equations.iter().flat_map(|q| [&q.lhs, &q.rhs]).chain(self.inequations.iter()) {
            for n in e.identifiers() {
                if !self.is_constant_name(&n) {
                    vars.insert(n);
                }
            }
        }
        self.variables = vars.into_iter().collect();
    }

    /// Requires every unknown to be in `declared`.
    pub fn check_declared(&self, declared: &[String]) -> Result<(), ParseErrorKind> {
        match self.variables.iter().find(|v| !declared.contains(v)) {
            Some(v) => Err(ParseErrorKind::Undeclared(v.clone())),
            None => Ok(()),
        }
    }

    /// The system without its last equation (used to split off a cover).
    pub fn without_last_equation(&self) -> Option<(PolynomialSystem, Equation)> {
        let mut base = self.clone();
        let last = base.equations.pop()?;
        base.finish_variables();
        Some((base, last))
    }
}

impl fmt::Display for PolynomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        for e in &self.inequations {
            writeln!(f, "{e} != 0")?;
        }
        Ok(())
    }
}
