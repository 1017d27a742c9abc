//! Text format for polynomials.
//!
//! ```text
//! poly    := sum
//! sum     := [sign] product (sign product)*
//! product := factor ("*" factor)*      ("*" may be omitted before "(")
//! factor  := atom ["^" int]
//! atom    := int ["/" int] | name | "(" sum ")"
//! ```
//!
//! Whitespace is ignored between tokens. Output lists terms in descending
//! ring order, drops unit coefficients and writes `*` and `^` explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational, Ring};
use crate::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn digits(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest.bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
        self.pos += len;
        Some((start, &rest[..len]))
    }
}

/// Parses `text` in `ring`. Errors carry the byte offset of the problem.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let mut cur = Cursor { text, pos: 0 };
    let p = parse_sum(ring, &mut cur)?;
    match cur.peek() {
        None => Ok(p),
        Some(ch) => Err(cur.error(format!("unexpected `{ch}`"))),
    }
}

fn parse_sum(ring: &Ring, cur: &mut Cursor<'_>) -> Result<Polynomial> {
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    let mut acc = Polynomial::zero(ring);
    loop {
        let t = parse_product(ring, cur)?;
        acc = if negative { &acc - &t } else { &acc + &t };
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else {
            return Ok(acc);
        }
    }
}

/// Factors joined by `*`, or juxtaposed before a parenthesis as in `2(x + y)`.
fn parse_product(ring: &Ring, cur: &mut Cursor<'_>) -> Result<Polynomial> {
    let mut acc = parse_factor(ring, cur)?;
    while cur.eat('*') || cur.peek() == Some('(') {
        acc = &acc * &parse_factor(ring, cur)?;
    }
    Ok(acc)
}

fn parse_factor(ring: &Ring, cur: &mut Cursor<'_>) -> Result<Polynomial> {
    let base = parse_atom(ring, cur)?;
    if !cur.eat('^') {
        return Ok(base);
    }
    let (at, digits) = cur.digits()?;
    match digits.parse::<u32>() {
        Ok(e) if e > 0 => Ok(base.pow(e)),
        _ => Err(Error::Parse { offset: at, message: "exponent must be a positive integer".into() }),
    }
}

fn parse_atom(ring: &Ring, cur: &mut Cursor<'_>) -> Result<Polynomial> {
    match cur.peek() {
        Some(ch) if ch.is_ascii_digit() => {
            let (_, num) = cur.digits()?;
            let num: BigInt = num.parse().expect("digits");
            let den = if cur.eat('/') {
                let (at, den) = cur.digits()?;
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(Error::ZeroDenominator { offset: at });
                }
                den
            } else {
                BigInt::one()
            };
            Ok(Polynomial::constant(ring, Rational::new(num, den)))
        }
        Some('(') => {
            cur.pos += 1;
            let inner = parse_sum(ring, cur)?;
            if !cur.eat(')') {
                return Err(cur.error("expected `)`"));
            }
            Ok(inner)
        }
        None => Err(cur.error("expected a term")),
        _ => {
            let Some((at, name)) = cur.ident() else {
                return Err(cur.error("expected a variable"));
            };
            let index = ring
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), offset: at })?;
            Ok(Polynomial::monomial(ring, Monomial::var(ring.arity(), index), Rational::one()))
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring().vars();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, vars, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, MonomialOrder, PolyRing};

    fn ring() -> Ring {
        PolyRing::grevlex(["x", "y"]).unwrap()
    }

    #[test]
    fn reads_terms() {
        let f = parse_polynomial(&ring(), "y^2 - x^3").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&Monomial::new(vec![0, 2])), rat(1, 1));
        assert_eq!(f.coefficient(&Monomial::new(vec![3, 0])), rat(-1, 1));
        assert!(parse_polynomial(&ring(), "0").unwrap().is_zero());
        assert!(parse_polynomial(&ring(), " 0 ").unwrap().terms().is_empty());
    }

    #[test]
    fn collects_like_terms() {
        let f = parse_polynomial(&ring(), "3/2*x*y + x*y").unwrap();
        assert_eq!(f.terms(), &[(Monomial::new(vec![1, 1]), rat(5, 2))]);
        assert!(parse_polynomial(&ring(), "x - x").unwrap().is_zero());
        assert_eq!(parse_polynomial(&ring(), "x*x*y^2").unwrap().to_string(), "x^2*y^2");
    }

    #[test]
    fn prints_descending() {
        let f = parse_polynomial(&ring(), "-1*x^3 + y^2").unwrap();
        assert_eq!(f.to_string(), "-x^3 + y^2");
        let lex_yx = PolyRing::new(["y", "x"], MonomialOrder::Lex).unwrap();
        let g = parse_polynomial(&lex_yx, "-1*x^3 + y^2").unwrap();
        assert_eq!(g.to_string(), "y^2 - x^3");
        let h = parse_polynomial(&ring(), "-2/4*x + 7 - 3*y^2").unwrap();
        assert_eq!(h.to_string(), "-3*y^2 - 1/2*x + 7");
        assert_eq!(parse_polynomial(&ring(), "-5").unwrap().to_string(), "-5");
    }

    #[test]
    fn expands_parentheses() {
        let r = ring();
        let node = parse_polynomial(&r, "y^2 - x^2*(x + 1)").unwrap();
        assert_eq!(node, parse_polynomial(&r, "y^2 - x^3 - x^2").unwrap());
        assert_eq!(parse_polynomial(&r, "2(x - y)^2").unwrap(), parse_polynomial(&r, "2*x^2 - 4*x*y + 2*y^2").unwrap());
        assert_eq!(parse_polynomial(&r, "-(x)").unwrap().to_string(), "-x");
        assert!(matches!(parse_polynomial(&r, "(x + y"), Err(Error::Parse { offset: 6, .. })));
        assert!(matches!(parse_polynomial(&r, "x + y)"), Err(Error::Parse { offset: 5, .. })));
    }

    #[test]
    fn reports_errors_with_offsets() {
        assert_eq!(
            parse_polynomial(&ring(), "x + z^2"),
            Err(Error::UnknownVariable { name: "z".into(), offset: 4 })
        );
        assert_eq!(parse_polynomial(&ring(), "1/0*x"), Err(Error::ZeroDenominator { offset: 2 }));
        assert!(matches!(parse_polynomial(&ring(), "x +"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_polynomial(&ring(), ""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_polynomial(&ring(), "x^0"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_polynomial(&ring(), "2x"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_polynomial(&ring(), "x**y"), Err(Error::Parse { .. })));
    }
}
