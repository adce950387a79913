//! Parser for the plain-text expression format.
//!
//! Accepts the canonical output of [`Polynomial`]'s `Display` as well as
//! looser hand-written input: `+ - * / ^`, parentheses, integer and `n/m`
//! literals, implicit `*` is not supported. Division by non-constant
//! expressions is allowed when parsing fractions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fraction::FactoredFraction;
use crate::poly::{Polynomial, Universe};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    universe: &'a Arc<Universe>,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FactoredFraction> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FactoredFraction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc.try_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FactoredFraction> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<FactoredFraction> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FactoredFraction> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let r: Rational = n.parse().map_err(|_| self.err("bad number"))?;
                Ok(FactoredFraction::constant(self.universe, r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let v = Polynomial::var(self.universe, &name).map_err(|_| {
                    self.err(&format!(
                        "unknown variable `{name}` (universe [{}])",
                        self.universe.names().join(", ")
                    ))
                })?;
                Ok(FactoredFraction::from_poly(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("unexpected end of expression or token")),
        }
    }
}

/// Parses a rational expression in the given universe.
pub fn parse_fraction(universe: &Arc<Universe>, s: &str) -> Result<FactoredFraction> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        universe,
        src: s,
    };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a polynomial; fails if the expression has a genuine denominator.
pub fn parse_polynomial(universe: &Arc<Universe>, s: &str) -> Result<Polynomial> {
    let f = parse_fraction(universe, s)?;
    f.to_polynomial()
        .ok_or_else(|| Error::Parse(format!("`{s}` is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_output() {
        let u = Universe::new(["a", "b", "q"]);
        for s in [
            "a^2 * q - a * b * q - a * b + b^2",
            "1 - q",
            "-2 + 3/2 * a",
            "0",
        ] {
            assert_eq!(parse_polynomial(&u, s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        let u = Universe::new(["a"]);
        assert!(parse_polynomial(&u, "a +").is_err());
        assert!(parse_polynomial(&u, "z").is_err());
        assert!(parse_polynomial(&u, "1/a").is_err());
        assert!(parse_polynomial(&u, "(a").is_err());
        assert!(parse_fraction(&u, "a/0").is_err());
    }

    #[test]
    fn unicode_minus() {
        let u = Universe::new(["a", "b"]);
        assert_eq!(
            parse_polynomial(&u, "a \u{2212} b").unwrap().to_string(),
            "a - b"
        );
    }
}
