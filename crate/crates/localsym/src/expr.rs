//! Expression parsing for rational functions and ring elements.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' int)?
//! atom   := '(' expr ')' | var | int | '-' factor
//! ```
//! Exponents are integer literals (optionally negative). Parenthesized
//! subexpressions are remembered so that user-supplied factorizations can be
//! kept as factored-form hints on the parsed values.

use crate::bivariate::RatFunc2;
use crate::error::{Error, Result};
use crate::field::{Elem, Field, NilShape};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Byte range of a node in the source string.
pub type Span = (usize, usize);

#[derive(Debug, Clone)]
pub struct Expr {
    pub node: ExprNode,
    pub span: Span,
    /// True when the node was written inside its own parentheses.
    pub paren: bool,
}

#[derive(Debug, Clone)]
pub enum ExprNode {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => { out.push((Tok::Plus, i)); i += 1 }
            '-' => { out.push((Tok::Minus, i)); i += 1 }
            '*' => { out.push((Tok::Star, i)); i += 1 }
            '/' => { out.push((Tok::Slash, i)); i += 1 }
            '^' => { out.push((Tok::Caret, i)); i += 1 }
            '(' => { out.push((Tok::LParen, i)); i += 1 }
            ')' => { out.push((Tok::RParen, i)); i += 1 }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: i64 = text
                    .parse()
                    .map_err(|_| err(start, format!("integer literal '{text}' is too large")))?;
                out.push((Tok::Int(n), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            other => return Err(err(i, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => ExprNode::Add as fn(Box<Expr>, Box<Expr>) -> ExprNode,
                Some(Tok::Minus) => ExprNode::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = (lhs.span.0, rhs.span.1);
            lhs = Expr { node: op(Box::new(lhs), Box::new(rhs)), span, paren: false };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => ExprNode::Mul as fn(Box<Expr>, Box<Expr>) -> ExprNode,
                Some(Tok::Slash) => ExprNode::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            let span = (lhs.span.0, rhs.span.1);
            lhs = Expr { node: op(Box::new(lhs), Box::new(rhs)), span, paren: false };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some((Tok::Int(n), p)) => {
                let e = if neg { -n } else { n };
                let span = (base.span.0, p);
                Ok(Expr { node: ExprNode::Pow(Box::new(base), e), span, paren: false })
            }
            other => Err(err(
                other.map_or(self.len, |(_, p)| p),
                "exponent must be an integer literal",
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some((Tok::LParen, start)) => {
                let mut inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, end)) => {
                        inner.span = (start, end + 1);
                        inner.paren = true;
                        Ok(inner)
                    }
                    other => Err(err(
                        other.map_or(self.len, |(_, p)| p),
                        "expected ')'",
                    )),
                }
            }
            Some((Tok::Ident(name), p)) => Ok(Expr {
                span: (p, p + name.len()),
                node: ExprNode::Var(name),
                paren: false,
            }),
            Some((Tok::Int(n), p)) => {
                let digits = n.to_string().len();
                Ok(Expr { node: ExprNode::Int(n), span: (p, p + digits), paren: false })
            }
            Some((Tok::Minus, p)) => {
                let f = self.factor()?;
                let span = (p, f.span.1);
                Ok(Expr { node: ExprNode::Neg(Box::new(f)), span, paren: false })
            }
            Some((t, p)) => Err(err(p, format!("unexpected token {t:?}"))),
            None => Err(err(self.len, "unexpected end of input")),
        }
    }
}

/// Parses the grammar into a spanned syntax tree without evaluating it.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, len: src.len() };
    let e = p.expr()?;
    if let Some((_, pos)) = p.toks.get(p.pos) {
        return Err(err(*pos, "unexpected trailing input"));
    }
    Ok(e)
}

/// Resolves the non-coordinate variable names: the extension generator and
/// the nilpotent generators, each only when the ring provides them.
fn special_value(k: &Field, name: &str) -> Option<Elem> {
    match name {
        "a" => {
            if k.extension_degree().is_some() {
                k.generator().ok()
            } else {
                None
            }
        }
        "eps" => match k.nil_shape() {
            Some(NilShape::Truncated { .. }) => k.nil_generator(0).ok(),
            _ => None,
        },
        "eps1" => match k.nil_shape() {
            Some(NilShape::SquareZero { count }) if count >= 1 => k.nil_generator(0).ok(),
            _ => None,
        },
        "eps2" => match k.nil_shape() {
            Some(NilShape::SquareZero { count }) if count >= 2 => k.nil_generator(1).ok(),
            _ => None,
        },
        _ => None,
    }
}

fn unknown_var(name: &str, span: Span, allowed: &str) -> Error {
    err(
        span.0,
        format!("variable '{name}' is not available here (allowed: {allowed})"),
    )
}

fn eval_ratfunc(e: &Expr, k: &Field, var: char) -> Result<RatFunc> {
    let v = match &e.node {
        ExprNode::Int(n) => RatFunc::from_i64(k, var, *n),
        ExprNode::Var(name) => {
            if name.len() == 1 && name.chars().next() == Some(var) {
                RatFunc::variable(k, var)
            } else if let Some(c) = special_value(k, name) {
                RatFunc::constant(c, var)
            } else {
                return Err(unknown_var(name, e.span, &var.to_string()));
            }
        }
        ExprNode::Neg(a) => eval_ratfunc(a, k, var)?.neg(),
        ExprNode::Add(a, b) => eval_ratfunc(a, k, var)?.add(&eval_ratfunc(b, k, var)?)?,
        ExprNode::Sub(a, b) => eval_ratfunc(a, k, var)?.sub(&eval_ratfunc(b, k, var)?)?,
        ExprNode::Mul(a, b) => eval_ratfunc(a, k, var)?.mul(&eval_ratfunc(b, k, var)?)?,
        ExprNode::Div(a, b) => {
            let d = eval_ratfunc(b, k, var)?;
            if d.is_zero() {
                return Err(err(b.span.0, "division by zero"));
            }
            eval_ratfunc(a, k, var)?.div(&d)?
        }
        ExprNode::Pow(a, n) => {
            let base = eval_ratfunc(a, k, var)?;
            if base.is_zero() && *n < 0 {
                return Err(err(a.span.0, "division by zero"));
            }
            base.pow(*n)?
        }
    };
    Ok(if e.paren { v.as_hinted_factor() } else { v })
}

fn eval_ratfunc2(e: &Expr, k: &Field) -> Result<RatFunc2> {
    let v = match &e.node {
        ExprNode::Int(n) => RatFunc2::constant(k.from_i64(*n)),
        ExprNode::Var(name) => match name.as_str() {
            "x" => RatFunc2::variable_x(k),
            "y" => RatFunc2::variable_y(k),
            _ => {
                if let Some(c) = special_value(k, name) {
                    RatFunc2::constant(c)
                } else {
                    return Err(unknown_var(name, e.span, "x, y"));
                }
            }
        },
        ExprNode::Neg(a) => eval_ratfunc2(a, k)?.neg(),
        ExprNode::Add(a, b) => eval_ratfunc2(a, k)?.add(&eval_ratfunc2(b, k)?)?,
        ExprNode::Sub(a, b) => eval_ratfunc2(a, k)?.sub(&eval_ratfunc2(b, k)?)?,
        ExprNode::Mul(a, b) => eval_ratfunc2(a, k)?.mul(&eval_ratfunc2(b, k)?)?,
        ExprNode::Div(a, b) => {
            let d = eval_ratfunc2(b, k)?;
            if d.is_zero() {
                return Err(err(b.span.0, "division by zero"));
            }
            eval_ratfunc2(a, k)?.div(&d)?
        }
        ExprNode::Pow(a, n) => {
            let base = eval_ratfunc2(a, k)?;
            if base.is_zero() && *n < 0 {
                return Err(err(a.span.0, "division by zero"));
            }
            base.pow(*n)?
        }
    };
    Ok(if e.paren { v.as_hinted_factor() } else { v })
}

fn eval_elem(e: &Expr, k: &Field) -> Result<Elem> {
    Ok(match &e.node {
        ExprNode::Int(n) => k.from_i64(*n),
        ExprNode::Var(name) => special_value(k, name)
            .ok_or_else(|| unknown_var(name, e.span, "constants of the ring"))?,
        ExprNode::Neg(a) => eval_elem(a, k)?.neg_ref(),
        ExprNode::Add(a, b) => &eval_elem(a, k)? + &eval_elem(b, k)?,
        ExprNode::Sub(a, b) => eval_elem(a, k)?.sub_ref(&eval_elem(b, k)?),
        ExprNode::Mul(a, b) => &eval_elem(a, k)? * &eval_elem(b, k)?,
        ExprNode::Div(a, b) => {
            let d = eval_elem(b, k)?;
            if d.is_zero() {
                return Err(err(b.span.0, "division by zero"));
            }
            eval_elem(a, k)?.try_div(&d)?
        }
        ExprNode::Pow(a, n) => {
            let base = eval_elem(a, k)?;
            if base.is_zero() && *n < 0 {
                return Err(err(a.span.0, "division by zero"));
            }
            base.pow(*n)?
        }
    })
}

/// Parses a univariate rational function in the named variable, keeping
/// parenthesized factors as a factored-form hint.
pub fn parse_ratfunc(src: &str, k: &Field, var: char) -> Result<RatFunc> {
    eval_ratfunc(&parse(src)?, k, var)
}

/// Parses a bivariate rational function in x and y.
pub fn parse_ratfunc2(src: &str, k: &Field) -> Result<RatFunc2> {
    eval_ratfunc2(&parse(src)?, k)
}

/// Parses a constant expression into a ring element.
pub fn parse_elem(src: &str, k: &Field) -> Result<Elem> {
    eval_elem(&parse(src)?, k)
}

/// Parses a polynomial in the named variable; rejects true quotients.
pub fn parse_poly(src: &str, k: &Field, var: char) -> Result<Poly> {
    let f = parse_ratfunc(src, k, var)?;
    if !f.den().is_one() {
        return Err(err(0, "expected a polynomial, found a quotient"));
    }
    Ok(f.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn parses_and_reduces() {
        let k = q();
        let f = parse_ratfunc("(t^2+1)/t", &k, 't').unwrap();
        assert_eq!(f.to_string(), "(t^2+1)/t");
        let g = parse_ratfunc("t + 1 - 1", &k, 't').unwrap();
        assert_eq!(g.to_string(), "t");
        // reduction to lowest terms happens on construction
        let h = parse_ratfunc("(t^2-1)/(t-1)", &k, 't').unwrap();
        assert_eq!(h.to_string(), "t+1");
    }

    #[test]
    fn constant_one() {
        let k = q();
        let f = parse_ratfunc("1", &k, 't').unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let k = q();
        let e = parse_ratfunc("t/(t-t)", &k, 't').unwrap_err();
        assert!(matches!(e, Error::Parse { .. }), "{e}");
        let e = parse_ratfunc("t^-1 + 0^-1", &k, 't').unwrap_err();
        assert!(matches!(e, Error::Parse { .. }), "{e}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let k = q();
        match parse_ratfunc("t + + 1", &k, 't') {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_ratfunc("t^t", &k, 't') {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_ratfunc("(t", &k, 't') {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn variables_are_gated() {
        let k = q();
        assert!(parse_ratfunc("x", &k, 't').is_err());
        assert!(parse_ratfunc("eps1", &k, 't').is_err());
        assert!(parse_ratfunc("a", &k, 't').is_err());
        let e2 = Field::eps_square_zero(k.clone(), 2).unwrap();
        let v = parse_elem("1 - 3*eps1*eps2", &e2).unwrap();
        assert_eq!(v.to_string(), "1-3*eps1*eps2");
        assert!(parse_elem("eps", &e2).is_err());
        let e3 = Field::eps_truncated(k.clone(), 3).unwrap();
        let v = parse_elem("1+eps^2", &e3).unwrap();
        assert_eq!(v.to_string(), "1+eps^2");
        assert!(parse_elem("eps1", &e3).is_err());
    }

    #[test]
    fn extension_generator() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Poly::from_i64_coeffs(&f3, 'u', &[1, 0, 1])
            .extension_field("a")
            .unwrap();
        let v = parse_elem("a^2", &f9).unwrap();
        assert_eq!(v, f9.from_i64(-1));
        let f = parse_ratfunc("t-a", &f9, 't').unwrap();
        assert_eq!(f.to_string(), "t+2*a");
        let g = parse_ratfunc(&f.to_string(), &f9, 't').unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parenthesization_becomes_hint() {
        let k = q();
        let f = parse_ratfunc("(t-1)*(t+1)/(t+2)^2", &k, 't').unwrap();
        let hint = f.hint().unwrap();
        let (unit, factors) = f.factored().unwrap();
        assert!(unit.is_one());
        assert_eq!(factors.len(), 3);
        assert_eq!(hint.factors.len(), 3);
        let f2 = parse_ratfunc2("(y-x^2)*(x-1)/x", &k).unwrap();
        let h2 = f2.hint().unwrap();
        assert_eq!(h2.factors.len(), 3);
    }

    #[test]
    fn precedence_and_unary_minus() {
        let k = q();
        let f = parse_ratfunc("-t^2", &k, 't').unwrap();
        assert_eq!(f.to_string(), "-t^2");
        let g = parse_ratfunc("2+3*4^2", &k, 't').unwrap();
        assert_eq!(g.to_string(), "50");
        let h = parse_ratfunc("2-3-4", &k, 't').unwrap();
        assert_eq!(h.to_string(), "-5");
        let i = parse_ratfunc("12/6/2", &k, 't').unwrap();
        assert_eq!(i.to_string(), "1");
        let j = parse_ratfunc("3*-2", &k, 't').unwrap();
        assert_eq!(j.to_string(), "-6");
    }

    #[test]
    fn roundtrip_display_reparse() {
        let k = q();
        for src in [
            "(t^2+1)/t",
            "t^3 - t/(t+1)",
            "-(t-1)/(t+1)",
            "1/2*t + 1/3",
        ] {
            let f = parse_ratfunc(src, &k, 't').unwrap();
            let g = parse_ratfunc(&f.to_string(), &k, 't').unwrap();
            assert_eq!(f, g, "round trip failed for {src}");
        }
        let f5 = Field::prime(5).unwrap();
        for src in ["t^2+4*t+1", "(t+2)/(t^2+3)", "3"] {
            let f = parse_ratfunc(src, &f5, 't').unwrap();
            let g = parse_ratfunc(&f.to_string(), &f5, 't').unwrap();
            assert_eq!(f, g);
        }
        let f = parse_ratfunc2("(y-x^2)/(x*y+1)", &k).unwrap();
        let g = parse_ratfunc2(&f.to_string(), &k).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn bivariate_parsing() {
        let k = q();
        let f = parse_ratfunc2("y - x^2 - 1", &k).unwrap();
        assert_eq!(f.to_string(), "y-x^2-1");
        assert!(parse_ratfunc2("t", &k).is_err());
        let p = parse_poly("t^2+1", &k, 't').unwrap();
        assert_eq!(p.degree(), 2);
        assert!(parse_poly("1/t", &k, 't').is_err());
    }
}
