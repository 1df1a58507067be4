//! Expression trees of the claim language, with a parser and a printer
//! whose output parses back to the same tree.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::ArithOp;

/// Names with a fixed meaning: the global parameter `t` and the local
/// parameter `r` of the current place.
pub const RESERVED: [&str; 4] = ["t", "r", "sqrt", "infinity"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative integer literal; signs and fractions are operators.
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Bin(ArithOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        if n < 0 {
            Expr::Neg(Box::new(Expr::Int(BigInt::from(-n))))
        } else {
            Expr::Int(BigInt::from(n))
        }
    }

    pub fn ident(name: &str) -> Expr {
        Expr::Ident(name.to_string())
    }

    pub fn bin(op: ArithOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn pow(base: Expr, k: i64) -> Expr {
        Expr::Pow(Box::new(base), k)
    }

    /// Every identifier in the tree, reserved names included.
    pub fn identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_identifiers(&mut out);
        out
    }

    fn collect_identifiers(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Ident(n) => {
                out.insert(n.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_identifiers(out),
            Expr::Bin(_, a, b) => {
                a.collect_identifiers(out);
                b.collect_identifiers(out);
            }
        }
    }

    pub fn mentions_any(&self, names: &[String]) -> bool {
        self.identifiers().iter().any(|n| names.contains(n))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(ArithOp::Add | ArithOp::Sub, ..) => 1,
            Expr::Bin(ArithOp::Mul | ArithOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Ident(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(n) => f.write_str(n),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Bin(op, a, b) => {
                let (lhs, rhs, sym) = match op {
                    ArithOp::Add => (1, 2, " + "),
                    ArithOp::Sub => (1, 2, " - "),
                    ArithOp::Mul => (2, 3, "*"),
                    ArithOp::Div => (2, 3, "/"),
                };
                a.write_at(f, lhs)?;
                f.write_str(sym)?;
                b.write_at(f, rhs)
            }
            Expr::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(String),
    #[error("exponent must be an integer literal")]
    NonIntegerExponent,
    #[error("exponent out of range")]
    ExponentRange,
    #[error("undeclared identifier `{0}`")]
    Undeclared(String),
    #[error("`sqrt` is only allowed as the whole right-hand side of a binding")]
    SqrtNotAllowed,
    #[error("`{0}` is reserved")]
    Reserved(String),
    #[error("division by an expression containing the variable `{0}`")]
    VariableDivisor(String),
    #[error("negative power of an expression containing the variable `{0}`")]
    VariableNegativePower(String),
    #[error("{0}")]
    Other(String),
}

/// A parse error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, col, kind }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    NotEq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::NotEq => write!(f, "`!=`"),
        }
    }
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c == '!' && chars.get(i + 1) == Some(&'=') {
            out.push((Tok::NotEq, col));
            i += 2;
        } else if "+-*/^()=".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError::new(line, col, ParseErrorKind::BadChar(c)));
        }
    }
    Ok(out)
}

/// Recursive-descent parser over one line of source.
pub(crate) struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    /// `col0` is the 1-based column of the first character of `src`.
    pub(crate) fn new(src: &str, line: usize, col0: usize) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src, line, col0)?, pos: 0, line, end_col: col0 + src.chars().count() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.col(), kind)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::Unexpected { expected: expected.into(), found: t.to_string() }),
            None => self.err(ParseErrorKind::UnexpectedEnd(expected.into())),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    pub(crate) fn eat_noteq(&mut self) -> bool {
        if self.peek() == Some(&Tok::NotEq) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_eq(&mut self) -> bool {
        self.eat('=')
    }

    /// Column of the next token, for error reporting by callers.
    pub(crate) fn position(&self) -> (usize, usize) {
        (self.line, self.col())
    }

    /// Consumes `0` or reports what was found instead.
    pub(crate) fn expect_zero(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) if *n == BigInt::from(0) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected("`0`")),
        }
    }

    /// `sqrt(EXPR)` as a whole, or a plain expression. Returns the flag.
    pub(crate) fn binding_rhs(&mut self) -> Result<(Expr, bool), ParseError> {
        if self.peek() == Some(&Tok::Ident("sqrt".into())) && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::Sym('(')) {
            self.pos += 2;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok((e, true));
        }
        Ok((self.expr()?, false))
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            let op = if self.eat('+') {
                ArithOp::Add
            } else if self.eat('-') {
                ArithOp::Sub
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            acc = Expr::bin(op, acc, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let op = if self.eat('*') {
                ArithOp::Mul
            } else if self.eat('/') {
                ArithOp::Div
            } else {
                return Ok(acc);
            };
            let rhs = self.unary()?;
            acc = Expr::bin(op, acc, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let k = match self.peek() {
            Some(Tok::Int(n)) => {
                let k: i64 = i64::try_from(n.clone()).map_err(|_| self.err(ParseErrorKind::ExponentRange))?;
                if k > 1_000_000 {
                    return Err(self.err(ParseErrorKind::ExponentRange));
                }
                self.pos += 1;
                if neg { -k } else { k }
            }
            Some(_) => return Err(self.err(ParseErrorKind::NonIntegerExponent)),
            None => return Err(self.unexpected("an integer exponent")),
        };
        if paren && !self.eat(')') {
            return Err(self.err(ParseErrorKind::NonIntegerExponent));
        }
        if self.peek() == Some(&Tok::Sym('^')) {
            return Err(self.unexpected("an operator other than `^` (parenthesise iterated powers)"));
        }
        Ok(Expr::pow(base, k))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                if name == "sqrt" {
                    return Err(self.err(ParseErrorKind::SqrtNotAllowed));
                }
                if name == "infinity" {
                    return Err(self.err(ParseErrorKind::Reserved(name)));
                }
                self.pos += 1;
                Ok(Expr::Ident(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.unexpected("a number, identifier or `(`")),
        }
    }
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src, 1, 1)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}
