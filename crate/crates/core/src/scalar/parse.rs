//! Text grammar for scalars.
//!
//! ```text
//! rational  := ["-"] digits ["/" digits]
//! ratfunc   := "(" poly ")" "/" "(" poly ")"  |  poly
//! poly      := ["-"] term (("+" | "-") term)*
//! term      := rational ["*" "q" ["^" digits]]  |  "q" ["^" digits]
//! ```
//!
//! Whitespace is accepted around operators inside `poly`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Domain, QPoly, Rational, RationalFunction, Scalar};
use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    pub(crate) fn bump(&mut self) {
        self.pos += 1;
    }

    pub(crate) fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }

    pub(crate) fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    pub(crate) fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.error(format!("expected {:?}", b as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }

    pub(crate) fn unsigned_rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let den_at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::Parse { offset: den_at, message: "zero denominator".into() });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let at = self.pos;
        let e = self.digits()?;
        e.try_into().or(Err(Error::Parse { offset: at, message: "exponent too large".into() }))
    }

    /// `term` with the sign already consumed: returns (coefficient, degree).
    pub(crate) fn term(&mut self, var: u8) -> Result<(Rational, usize)> {
        match self.peek() {
            Some(b) if b == var => {
                self.bump();
                Ok((Rational::from_integer(1.into()), self.exponent()?))
            }
            Some(b) if b.is_ascii_digit() => {
                let c = self.unsigned_rational()?;
                let save = self.pos;
                self.skip_ws();
                if self.eat(b'*') {
                    self.skip_ws();
                    self.expect(var)?;
                    Ok((c, self.exponent()?))
                } else {
                    self.pos = save;
                    Ok((c, 0))
                }
            }
            _ => self.error(format!("expected a number or {:?}", var as char)),
        }
    }

    /// Consumes a sign between terms, returning `None` when no further term
    /// follows.
    pub(crate) fn separator(&mut self) -> Option<bool> {
        let save = self.pos;
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.bump();
                self.skip_ws();
                Some(false)
            }
            Some(b'-') => {
                self.bump();
                self.skip_ws();
                Some(true)
            }
            _ => {
                self.pos = save;
                None
            }
        }
    }

    fn qpoly(&mut self) -> Result<QPoly> {
        self.skip_ws();
        let mut negative = self.eat(b'-');
        let mut coeffs: Vec<Rational> = Vec::new();
        loop {
            let (c, k) = self.term(b'q')?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += if negative { -c } else { c };
            match self.separator() {
                Some(neg) => negative = neg,
                None => break,
            }
        }
        self.skip_ws();
        Ok(QPoly::from_coeffs(coeffs))
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut cur = Cursor::new(text);
    let negative = cur.eat(b'-');
    let r = cur.unsigned_rational()?;
    if !cur.at_end() {
        return cur.error("unexpected trailing input");
    }
    Ok(if negative { -r } else { r })
}

fn parse_ratfunc(text: &str) -> Result<RationalFunction> {
    let mut cur = Cursor::new(text);
    let f = if cur.eat(b'(') {
        let num = cur.qpoly()?;
        cur.expect(b')')?;
        cur.expect(b'/')?;
        cur.expect(b'(')?;
        let den_at = cur.pos();
        let den = cur.qpoly()?;
        cur.expect(b')')?;
        if den.is_zero() {
            return Err(Error::Parse { offset: den_at, message: "zero denominator".into() });
        }
        RationalFunction::new(num, den)?
    } else {
        RationalFunction::from_poly(cur.qpoly()?)
    };
    if !cur.at_end() {
        return cur.error("unexpected trailing input");
    }
    Ok(f)
}

/// Parses `text` as a scalar of `domain`.
pub fn scalar_parse(text: &str, domain: Domain) -> Result<Scalar> {
    match domain {
        Domain::Rational => parse_rational(text).map(Scalar::Rat),
        Domain::RationalFunction => parse_ratfunc(text).map(Scalar::Fun),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-8/27"), Ok(rational(-8, 27)));
        assert_eq!(parse_rational("6/4"), Ok(rational(3, 2)));
        assert_eq!(parse_rational("0"), Ok(rational(0, 1)));
    }

    #[test]
    fn malformed_rationals_report_offsets() {
        assert!(matches!(parse_rational("5/"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_rational("x"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_rational("3 "), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn rational_functions() {
        let f = scalar_parse("(1 + q^2)/(1)", Domain::RationalFunction).unwrap();
        assert_eq!(f.to_string(), "(1 + q^2)/(1)");
        let g = scalar_parse("1 - 1/2*q + 3*q^3", Domain::RationalFunction).unwrap();
        assert_eq!(g.to_string(), "(1 - 1/2*q + 3*q^3)/(1)");
        let h = scalar_parse("(1+q)/(1-q^2)", Domain::RationalFunction).unwrap();
        assert_eq!(h.to_string(), "(-1)/(-1 + q)");
        let c = scalar_parse("-2/3", Domain::RationalFunction).unwrap();
        assert_eq!(c.to_string(), "(-2/3)/(1)");
    }

    #[test]
    fn malformed_rational_functions() {
        assert!(matches!(
            scalar_parse("(1)/(0)", Domain::RationalFunction),
            Err(Error::Parse { offset: 5, .. })
        ));
        assert!(matches!(
            scalar_parse("(1 + )/(1)", Domain::RationalFunction),
            Err(Error::Parse { offset: 5, .. })
        ));
        assert!(scalar_parse("q^", Domain::RationalFunction).is_err());
        assert!(scalar_parse("(1)/(1", Domain::RationalFunction).is_err());
    }
}
