//! Function expressions over `x, y, z, r`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` is right associative and binds tighter than unary minus, so `-2^2` is
//! `-(2^2)` and `2^-1` is `2^(-1)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    SyntaxError { offset: usize, expected: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("expression undefined here: {0}")]
    EvalDomainError(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    R,
}

impl Var {
    fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::R => "r",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
    Abs,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn lookup(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Point at which an expression is evaluated; unset coordinates are zero.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point {
    pub fn from_coords(c: &[f64]) -> Self {
        Self {
            x: c.first().copied().unwrap_or(0.0),
            y: c.get(1).copied().unwrap_or(0.0),
            z: c.get(2).copied().unwrap_or(0.0),
        }
    }

    fn r(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

impl Expr {
    pub fn eval(&self, at: &Point) -> Result<f64, ExprError> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::Pi => std::f64::consts::PI,
            Expr::Var(Var::X) => at.x,
            Expr::Var(Var::Y) => at.y,
            Expr::Var(Var::Z) => at.z,
            Expr::Var(Var::R) => at.r(),
            Expr::Neg(a) => -a.eval(at)?,
            Expr::Add(a, b) => a.eval(at)? + b.eval(at)?,
            Expr::Sub(a, b) => a.eval(at)? - b.eval(at)?,
            Expr::Mul(a, b) => a.eval(at)? * b.eval(at)?,
            Expr::Div(a, b) => {
                let d = b.eval(at)?;
                if d == 0.0 {
                    return Err(ExprError::EvalDomainError("division by zero".into()));
                }
                a.eval(at)? / d
            }
            Expr::Pow(a, b) => a.eval(at)?.powf(b.eval(at)?),
            Expr::Call(f, a) => {
                let v = a.eval(at)?;
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Abs => v.abs(),
                    Func::Sqrt if v < 0.0 => {
                        return Err(ExprError::EvalDomainError(format!("sqrt of {v}")));
                    }
                    Func::Sqrt => v.sqrt(),
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::EvalDomainError(format!("non-finite value in `{self}`")))
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Num(_) | Expr::Pi => {}
            Expr::Var(v) => {
                out.insert(*v);
            }
            Expr::Neg(a) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

/// Fully parenthesized form; parsing it gives back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Pi => f.write_str("pi"),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionExpr {
    pub source: String,
    pub ast: Expr,
}

impl FunctionExpr {
    pub fn eval(&self, at: &Point) -> Result<f64, ExprError> {
        self.ast.eval(at)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.ast.collect_vars(&mut out);
        out
    }

    /// True when the expression reads the point only through `r`.
    pub fn is_radial(&self) -> bool {
        self.variables().iter().all(|v| *v == Var::R)
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ast.fmt(f)
    }
}

pub fn parse_function(src: &str) -> Result<FunctionExpr, ExprError> {
    let mut p = Parser { src, pos: 0 };
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.expected("an operator or end of input"));
    }
    Ok(FunctionExpr { source: src.to_string(), ast })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn expected(&self, what: &str) -> ExprError {
        ExprError::SyntaxError { offset: self.pos, expected: what.to_string() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.eat('^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.identifier(),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.expected("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.expected("a number, identifier or `(`")),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let value = self.src[start..end]
            .parse::<f64>()
            .map_err(|_| ExprError::SyntaxError { offset: start, expected: "a number".into() })?;
        self.pos = end;
        Ok(Expr::Num(value))
    }

    fn identifier(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
            end += 1;
        }
        let name = &self.src[start..end];
        self.pos = end;
        let var = match name {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            "r" => Some(Var::R),
            _ => None,
        };
        if let Some(v) = var {
            return Ok(Expr::Var(v));
        }
        if name == "pi" {
            return Ok(Expr::Pi);
        }
        let Some(func) = Func::lookup(name) else {
            return Err(ExprError::UnknownIdentifier { name: name.to_string(), offset: start });
        };
        if !self.eat('(') {
            return Err(self.expected("`(` after a function name"));
        }
        let arg = self.expr()?;
        if !self.eat(')') {
            return Err(self.expected("`)`"));
        }
        Ok(Expr::Call(func, Box::new(arg)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(v: f64) -> Box<Expr> {
        Box::new(Expr::Num(v))
    }

    #[test]
    fn sinc_shape() {
        let f = parse_function("sin(r)/r").unwrap();
        assert_eq!(
            f.ast,
            Expr::Div(Box::new(Expr::Call(Func::Sin, Box::new(Expr::Var(Var::R)))), Box::new(Expr::Var(Var::R)))
        );
        assert!(f.is_radial());
    }

    #[test]
    fn gaussian_is_one_at_origin() {
        let f = parse_function("exp(-(x^2+y^2+z^2)/2)").unwrap();
        assert_eq!(f.eval(&Point::default()).unwrap(), 1.0);
        assert!(!f.is_radial());
    }

    #[test]
    fn stray_plus_is_reported_at_its_offset() {
        assert_eq!(
            parse_function("2*+3"),
            Err(ExprError::SyntaxError { offset: 2, expected: "a number, identifier or `(`".into() })
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_function("-2^2").unwrap();
        assert_eq!(f.ast, Expr::Neg(Box::new(Expr::Pow(num(2.0), num(2.0)))));
        assert_eq!(parse_function("2^3^2").unwrap().eval(&Point::default()).unwrap(), 512.0);
        assert_eq!(parse_function("8-4-2").unwrap().eval(&Point::default()).unwrap(), 2.0);
        assert_eq!(parse_function("8/4/2").unwrap().eval(&Point::default()).unwrap(), 1.0);
        assert_eq!(parse_function("2^-1").unwrap().eval(&Point::default()).unwrap(), 0.5);
        assert_eq!(parse_function("1+2*3").unwrap().eval(&Point::default()).unwrap(), 7.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_function("foo(x)"), Err(ExprError::UnknownIdentifier { offset: 0, .. })));
        assert!(matches!(parse_function("(1+2"), Err(ExprError::SyntaxError { offset: 4, .. })));
        assert!(matches!(parse_function("1 2"), Err(ExprError::SyntaxError { offset: 2, .. })));
        let f = parse_function("1/x").unwrap();
        assert!(matches!(f.eval(&Point::default()), Err(ExprError::EvalDomainError(_))));
        let g = parse_function("sqrt(x)").unwrap();
        assert!(matches!(g.eval(&Point { x: -1.0, ..Default::default() }), Err(ExprError::EvalDomainError(_))));
    }

    #[test]
    fn printing_round_trips() {
        for src in ["sin(r)/r", "-2^2", "2^3^2", "1.5e-3*x - y/(z+pi)", "abs(-x)^0.5", "exp(-(x^2+y^2+z^2)/2)"] {
            let a = parse_function(src).unwrap();
            let b = parse_function(&a.to_string()).unwrap();
            assert_eq!(a.ast, b.ast, "{src}");
        }
    }
}
