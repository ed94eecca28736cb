//! Expression syntax shared by scalars, elements and the command line.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT | NAME | '(' expr ')'
//! ```
//!
//! `q`, `h` and `i` are reserved; every other name must belong to the
//! alphabet handed to [`parse`].

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::ring::Ring;
use crate::scalar::{Gauss, Scalar, ScalarError};

pub const RESERVED: [&str; 3] = ["q", "h", "i"];

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Int(BigUint),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {col}: {msg}")]
pub struct ParseError {
    /// 1-based character column.
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigUint),
    Name(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Name(chars[start..k].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            k += 1;
        } else {
            return Err(ParseError { col, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { col: self.col(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
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

    fn term(&mut self) -> Result<Expr, ParseError> {
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
        let neg = self.eat('-');
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e: i32 = n
                    .try_into()
                    .map_err(|_| ParseError { col, msg: "exponent too large".into() })?;
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => self.err("expected integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Name(s)) => {
                if !RESERVED.contains(&s.as_str()) && !self.names.contains(&s.as_str()) {
                    return self.err(format!("unknown generator '{s}'"));
                }
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src`, accepting the reserved scalar symbols plus `names`.
pub fn parse(src: &str, names: &[&str]) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let end_col = src.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end_col, names };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Sym(_) => 5,
        }
    }

    /// Evaluates a name-free expression (only `q`, `h`, `i` and integers).
    pub fn eval_scalar(&self) -> Result<Scalar, ScalarError> {
        Ok(match self {
            Expr::Int(n) => Scalar::rational(num_rational::BigRational::from_integer(n.clone().into())),
            Expr::Sym(s) => match s.as_str() {
                "q" => Scalar::q(),
                "h" => Scalar::hbar(),
                "i" => Scalar::gauss(Gauss::i()),
                other => return Err(ScalarError::Parse(format!("'{other}' is not a scalar"))),
            },
            Expr::Neg(a) => a.eval_scalar()?.neg_ref(),
            Expr::Add(a, b) => a.eval_scalar()?.add_ref(&b.eval_scalar()?),
            Expr::Sub(a, b) => a.eval_scalar()?.sub_ref(&b.eval_scalar()?),
            Expr::Mul(a, b) => a.eval_scalar()?.mul_ref(&b.eval_scalar()?),
            Expr::Div(a, b) => a.eval_scalar()?.checked_div(&b.eval_scalar()?)?,
            Expr::Pow(a, e) => a.eval_scalar()?.powi(*e)?,
        })
    }

    /// Generic evaluation into any ring that can absorb scalars and names.
    pub fn eval_with<T, E>(
        &self,
        leaf: &dyn Fn(&str) -> Result<T, E>,
        from_int: &dyn Fn(&BigUint) -> T,
        div: &dyn Fn(&T, &T) -> Result<T, E>,
        powi: &dyn Fn(&T, i32) -> Result<T, E>,
    ) -> Result<T, E>
    where
        T: Ring,
    {
        let go = |e: &Expr| e.eval_with(leaf, from_int, div, powi);
        Ok(match self {
            Expr::Int(n) => from_int(n),
            Expr::Sym(s) => leaf(s)?,
            Expr::Neg(a) => go(a)?.neg_ref(),
            Expr::Add(a, b) => go(a)?.add_ref(&go(b)?),
            Expr::Sub(a, b) => go(a)?.sub_ref(&go(b)?),
            Expr::Mul(a, b) => go(a)?.mul_ref(&go(b)?),
            Expr::Div(a, b) => div(&go(a)?, &go(b)?)?,
            Expr::Pow(a, e) => powi(&go(a)?, *e)?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |e: &Expr, need: bool| if need { format!("({e})") } else { e.to_string() };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sym(s) => f.write_str(s),
            Expr::Neg(a) => write!(f, "-{}", child(a, a.prec() < 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", child(a, a.prec() < 1), child(b, b.prec() <= 1)),
            Expr::Sub(a, b) => write!(f, "{} - {}", child(a, a.prec() < 1), child(b, b.prec() <= 1)),
            Expr::Mul(a, b) => write!(f, "{}*{}", child(a, a.prec() < 2), child(b, b.prec() <= 2)),
            Expr::Div(a, b) => write!(f, "{}/{}", child(a, a.prec() < 2), child(b, b.prec() <= 2)),
            Expr::Pow(a, e) => write!(f, "{}^{e}", child(a, a.prec() < 5)),
        }
    }
}

pub(crate) fn parse_scalar(src: &str) -> Result<Scalar, ScalarError> {
    let e = parse(src, &[]).map_err(|e| ScalarError::Parse(e.to_string()))?;
    e.eval_scalar()
}

/// Parses a scalar, panicking on malformed input. For literals in code and tests.
pub fn s(src: &str) -> Scalar {
    parse_scalar(src).unwrap_or_else(|e| panic!("bad scalar literal {src:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_word_difference() {
        let e = parse("dx*x - x*dx", &["x", "dx"]).unwrap();
        assert!(matches!(e, Expr::Sub(..)));
    }

    #[test]
    fn parses_negative_exponent() {
        let e = parse("(q - q^-1)*b*c", &["b", "c"]).unwrap();
        assert_eq!(e.to_string(), "(q - q^-1)*b*c");
    }

    #[test]
    fn power_of_generator() {
        let e = parse("x^3*y", &["x", "y"]).unwrap();
        assert_eq!(e, Expr::Mul(Box::new(Expr::Pow(Box::new(Expr::Sym("x".into())), 3)), Box::new(Expr::Sym("y".into()))));
    }

    #[test]
    fn unknown_generator_has_position() {
        let err = parse("x + w", &["x"]).unwrap_err();
        assert_eq!(err.col, 5);
        assert!(err.msg.contains("unknown generator"));
    }

    #[test]
    fn malformed_input() {
        assert!(parse("x +", &["x"]).is_err());
        assert!(parse("x^y", &["x", "y"]).is_err());
        assert!(parse("(x", &["x"]).is_err());
        assert!(parse("x $ y", &["x", "y"]).is_err());
    }

    #[test]
    fn scalar_strings() {
        assert_eq!(s("q*q^-1"), Scalar::one());
        assert_eq!(s("i*i"), Scalar::int(-1));
        assert_eq!(s("(q^2 - 1)/(q - 1)"), s("q + 1"));
        assert!(parse_scalar("1/(q - q)").is_err());
    }

    #[test]
    fn print_parse_roundtrip_on_tricky_shapes() {
        for src in ["-(x*y)", "--x", "a - -b", "a - (b - c)", "a/(b*c)", "(-x)^2", "(a + b)^-2", "2^3"] {
            let e = parse(src, &["a", "b", "c", "x", "y"]).unwrap();
            let again = parse(&e.to_string(), &["a", "b", "c", "x", "y"]).unwrap();
            assert_eq!(e, again, "{src}");
        }
    }
}
