//! Reading polynomials written in conventional notation, e.g.
//! `7*t^2 - 13*t + 7` or `y^4*z - 2*y^4 + (y - 1)^2`.
//!
//! Grammar: sums of products of powers; juxtaposition multiplies; `/` only
//! divides by a number; negative exponents are allowed on monomials.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::multipoly::MultiPoly;
use crate::error::{Error, Result};
use crate::scalar::parse_rational;

type Q = MultiPoly<BigRational>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let ch = cs[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if ch.is_alphabetic() || ch == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Sym(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {ch:?} in polynomial"
            )));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Q> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Q> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.support_vars().is_empty() || d.is_zero() {
                    return Err(Error::Parse("division only by a nonzero number".into()));
                }
                acc = acc.scale(&(BigRational::one() / d.constant_term()));
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
            ) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Q> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Q> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(Error::Parse(
                "expected an integer exponent after '^'".into(),
            ));
        };
        self.pos += 1;
        let k: i32 = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {n:?}")))?;
        base.pow_i(if neg { -k } else { k })
            .map_err(|e| Error::Parse(e.to_string()))
    }

    fn atom(&mut self) -> Result<Q> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Q::constant(parse_rational(&n)?))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Q::var(&v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial with rational coefficients.
pub fn parse_multipoly(s: &str) -> Result<Q> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Parses a univariate Laurent polynomial in `var` (usually `t`).
pub fn parse_laurent(s: &str, var: &str) -> Result<LaurentPoly<BigRational>> {
    let p = parse_multipoly(s)?;
    if let Some(v) = p.support_vars().into_iter().find(|v| v != var) {
        return Err(Error::Parse(format!(
            "unexpected variable {v} (expected only {var})"
        )));
    }
    if p.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    p.to_laurent(var)
}
