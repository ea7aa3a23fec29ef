//! Coefficient expressions: `expr := term (("+"|"-") term)*`, `term := factor (("*"|"/") factor)*`,
//! `factor := base ("^" integer)?`, `base := rational | xN | xiN | d[f]/dxI.. | symbol | "(" expr ")"`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_short, Q};
use crate::superpoly::{Monomial, SuperPoly, Symbol, Var, XiSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Num(Q),
    /// 0-based coordinate index.
    Coord(usize),
    /// 0-based odd generator index.
    Xi(usize),
    Symbol(String),
    /// Partial derivative of a function symbol, 0-based indices.
    Deriv(String, Vec<usize>),
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, u32),
}

pub fn parse_expression(text: &str) -> Result<Expression> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '\u{2212}'
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(c) if Self::is_minus(c) => {
                    self.pos += 1;
                    lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expression::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expression::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expression> {
        if let Some(c) = self.peek() {
            if Self::is_minus(c) {
                self.pos += 1;
                return Ok(Expression::Neg(Box::new(self.factor()?)));
            }
        }
        let base = self.base()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.error("exponent must be a non-negative integer"));
            }
            let k: u32 = digits.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "exponent too large".into(),
            })?;
            return Ok(Expression::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn index_suffix(&self, name: &str, prefix: &str) -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
            return None;
        }
        rest.parse::<usize>().ok().map(|i| i - 1)
    }

    fn base(&mut self) -> Result<Expression> {
        let start = self.pos;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Expression::Num(Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.ident();
                if name == "d" && self.chars.get(self.pos) == Some(&'[') {
                    return self.derivative();
                }
                if let Some(i) = self.index_suffix(&name, "xi") {
                    return Ok(Expression::Xi(i));
                }
                if let Some(i) = self.index_suffix(&name, "x") {
                    return Ok(Expression::Coord(i));
                }
                if name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit()) && name.len() > 1 {
                    self.pos = start;
                    return Err(self.error("coordinate indices start at 1"));
                }
                Ok(Expression::Symbol(name))
            }
            Some(c) => {
                self.pos = start;
                self.skip_ws();
                Err(self.error(format!("unexpected `{c}`")))
            }
        }
    }

    /// `d[f]/dx1dx2`, with the `d` already consumed.
    fn derivative(&mut self) -> Result<Expression> {
        self.pos += 1;
        let name = self.ident();
        if name.is_empty() {
            return Err(self.error("expected function symbol"));
        }
        if self.chars.get(self.pos) != Some(&']') {
            return Err(self.error("expected `]`"));
        }
        self.pos += 1;
        if self.chars.get(self.pos) != Some(&'/') {
            return Err(self.error("expected `/` after `d[...]`"));
        }
        self.pos += 1;
        let mut idx = Vec::new();
        while self.chars.get(self.pos) == Some(&'d') && self.chars.get(self.pos + 1) == Some(&'x') {
            self.pos += 2;
            let d = self.digits();
            match d.parse::<usize>() {
                Ok(i) if i >= 1 => idx.push(i - 1),
                _ => return Err(self.error("expected coordinate index")),
            }
        }
        if idx.is_empty() {
            return Err(self.error("expected `dxN`"));
        }
        idx.sort_unstable();
        Ok(Expression::Deriv(name, idx))
    }
}

impl Expression {
    fn precedence(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Mul(..) | Expression::Div(..) | Expression::Neg(..) => 2,
            Expression::Pow(..) => 3,
            Expression::Num(c) if !c.is_integer() || c.is_negative() => 2,
            _ => 4,
        }
    }

    /// Every symbol name used, in order of first occurrence.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match self {
            Expression::Symbol(s) | Expression::Deriv(s, _) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expression::Neg(a) | Expression::Pow(a, _) => a.collect_symbols(out),
            Expression::Add(a, b) | Expression::Sub(a, b) | Expression::Mul(a, b) | Expression::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            _ => {}
        }
    }

    pub fn to_superpoly(&self, scope: &Scope) -> Result<SuperPoly> {
        let r = scope.dim;
        Ok(match self {
            Expression::Num(c) => SuperPoly::constant(r, c.clone()),
            Expression::Coord(i) | Expression::Xi(i) if *i >= r => {
                return Err(Error::Dimension {
                    expected: r,
                    found: i + 1,
                })
            }
            Expression::Coord(i) => SuperPoly::coord(r, *i),
            Expression::Xi(i) => SuperPoly::xi(r, *i),
            Expression::Symbol(s) => match scope.resolve(s)? {
                SymbolKind::Param => SuperPoly::param(r, s),
                SymbolKind::Function => SuperPoly::function(r, s),
            },
            Expression::Deriv(s, idx) => {
                if scope.resolve(s)? != SymbolKind::Function {
                    return Err(Error::Structure(format!("`{s}` is a parameter and cannot be differentiated")));
                }
                if let Some(&i) = idx.iter().find(|&&i| i >= r) {
                    return Err(Error::Dimension {
                        expected: r,
                        found: i + 1,
                    });
                }
                SuperPoly::term(r, XiSet::empty(), Monomial::var(Var::jet(Symbol::new(s), idx)), Q::one())
            }
            Expression::Neg(a) => a.to_superpoly(scope)?.neg(),
            Expression::Add(a, b) => a.to_superpoly(scope)?.try_add(&b.to_superpoly(scope)?)?,
            Expression::Sub(a, b) => a.to_superpoly(scope)?.sub(&b.to_superpoly(scope)?),
            Expression::Mul(a, b) => a.to_superpoly(scope)?.mul(&b.to_superpoly(scope)?),
            Expression::Div(a, b) => {
                let d = b.to_superpoly(scope)?;
                let c = constant_value(&d).ok_or_else(|| Error::NonPolynomial(format!("division by `{b}`")))?;
                if c.is_zero() {
                    return Err(Error::NonPolynomial("division by zero".into()));
                }
                a.to_superpoly(scope)?.scale(&c.recip())
            }
            Expression::Pow(a, k) => a.to_superpoly(scope)?.pow(*k),
        })
    }
}

fn constant_value(p: &SuperPoly) -> Option<Q> {
    if p.is_zero() {
        return Some(Q::zero());
    }
    let mut it = p.terms();
    let (t, c) = it.next()?;
    (it.next().is_none() && t.xi.degree() == 0 && t.mono.is_one()).then(|| c.clone())
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expression, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expression::Num(c) => f.write_str(&format_short(c)),
            Expression::Coord(i) => write!(f, "x{}", i + 1),
            Expression::Xi(i) => write!(f, "xi{}", i + 1),
            Expression::Symbol(s) => f.write_str(s),
            Expression::Deriv(s, idx) => {
                write!(f, "d[{s}]/")?;
                for i in idx {
                    write!(f, "dx{}", i + 1)?;
                }
                Ok(())
            }
            Expression::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 3)
            }
            Expression::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            Expression::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            Expression::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("*")?;
                wrap(f, b, 3)
            }
            Expression::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("/")?;
                wrap(f, b, 3)
            }
            Expression::Pow(a, k) => {
                wrap(f, a, 4)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Param,
    Function,
}

/// Name resolution for `to_superpoly`.
#[derive(Clone, Debug)]
pub struct Scope {
    pub dim: usize,
    pub params: Vec<String>,
    /// `None` admits any other name as a function symbol.
    pub functions: Option<Vec<String>>,
}

impl Scope {
    pub fn open(dim: usize) -> Self {
        Scope {
            dim,
            params: Vec::new(),
            functions: None,
        }
    }

    pub fn with_params(dim: usize, params: &[&str]) -> Self {
        Scope {
            dim,
            params: params.iter().map(|s| s.to_string()).collect(),
            functions: None,
        }
    }

    /// Only the listed names are accepted.
    pub fn closed(dim: usize, params: &[&str], functions: &[&str]) -> Self {
        Scope {
            dim,
            params: params.iter().map(|s| s.to_string()).collect(),
            functions: Some(functions.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn resolve(&self, name: &str) -> Result<SymbolKind> {
        if self.params.iter().any(|p| p == name) {
            return Ok(SymbolKind::Param);
        }
        match &self.functions {
            None => Ok(SymbolKind::Function),
            Some(fs) if fs.iter().any(|f| f == name) => Ok(SymbolKind::Function),
            Some(_) => Err(Error::UnknownSymbol(name.to_string())),
        }
    }
}

/// Parses and converts in one step.
pub fn parse_superpoly(text: &str, scope: &Scope) -> Result<SuperPoly> {
    parse_expression(text)?.to_superpoly(scope)
}

/// Integer value of a constant expression, if any.
pub fn as_integer(e: &Expression) -> Option<i64> {
    match e {
        Expression::Num(c) if c.is_integer() => c.to_integer().to_i64(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn quadratic() {
        let e = parse_expression("(x1^2 + x2^2 + x3^2)/2").unwrap();
        let p = e.to_superpoly(&Scope::open(3)).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.d_dx(2), SuperPoly::coord(3, 2));
        assert_eq!(e.to_string(), "(x1^2 + x2^2 + x3^2)/2");
    }

    #[test]
    fn linear_with_symbol() {
        let e = parse_expression("rho*x1 - 3/2*x3").unwrap();
        assert_eq!(e.symbols(), vec!["rho".to_string()]);
        let p = e.to_superpoly(&Scope::with_params(3, &["rho"])).unwrap();
        assert_eq!(p.to_string(), "x1*rho - 3/2*x3");
    }

    #[test]
    fn rejects_fractional_exponent() {
        match parse_expression("x1^(1/2)") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 3);
                assert!(msg.contains("integer"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(parse_expression("x1 + * x2"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_expression("(x1"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_expression(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn unknown_symbol() {
        let e = parse_expression("a*x1 + b").unwrap();
        let scope = Scope::closed(3, &[], &["a"]);
        assert!(matches!(e.to_superpoly(&scope), Err(Error::UnknownSymbol(s)) if s == "b"));
    }

    #[test]
    fn division_must_be_by_constant() {
        let e = parse_expression("x1/x2").unwrap();
        assert!(matches!(e.to_superpoly(&Scope::open(2)), Err(Error::NonPolynomial(_))));
        let e = parse_expression("x1/(4-2)").unwrap();
        assert_eq!(e.to_superpoly(&Scope::open(2)).unwrap(), SuperPoly::coord(2, 0).scale(&ratio(1, 2)));
    }

    #[test]
    fn superpoly_text_reparses() {
        let r = 3;
        let p = SuperPoly::function(r, "p")
            .d_dx(0)
            .d_dx(1)
            .mul(&SuperPoly::xi(r, 0))
            .mul(&SuperPoly::xi(r, 2))
            .scale(&ratio(-3, 2))
            .try_add(&SuperPoly::param(r, "t").mul(&SuperPoly::coord(r, 1).pow(2)))
            .unwrap();
        let text = p.to_string();
        let back = parse_superpoly(&text, &Scope::with_params(r, &["t"])).unwrap();
        assert_eq!(back, p, "{text}");
    }

    #[test]
    fn coordinate_out_of_range() {
        let e = parse_expression("x4").unwrap();
        assert!(matches!(e.to_superpoly(&Scope::open(3)), Err(Error::Dimension { .. })));
    }
}
