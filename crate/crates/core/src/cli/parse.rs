//! Recursive-descent parser for polynomial expressions in `x` over `F_p(s)`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exponent)?
//! atom  := integer | 'x' | 'X' | 's' | '(' expr ')'
//! exponent := '-'? integer | '(' '-'? integer ')'
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{fq_field_make, FqField};
use crate::ratfunc::{PolyX, RatFunc};

const MAX_EXPONENT: u64 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Arc<FqField>,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError { pos, msg: msg.into() }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn integer_digits(&mut self) -> Result<&[u8]> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected an integer"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn expr(&mut self) -> Result<PolyX> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyX> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                match d.degree() {
                    None => return Err(Error::DivisionByZero),
                    Some(0) => acc = acc.scale(&d.coeff(0).inv()?),
                    Some(_) => return Err(Error::XInDenominator),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<PolyX> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let at = self.pos;
        let digits = self.integer_digits()?;
        let text = std::str::from_utf8(digits).expect("ascii digits");
        let e: u64 = text.parse().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| syntax(at, "exponent too large"))?;
        if paren {
            self.expect(b')')?;
        }
        Ok(if neg { -(e as i64) } else { e as i64 })
    }

    fn power(&mut self) -> Result<PolyX> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if e >= 0 {
            return Ok(base.pow(e as u64));
        }
        match base.degree() {
            None => Err(Error::DivisionByZero),
            Some(0) => Ok(PolyX::constant(base.coeff(0).pow(e)?)),
            Some(_) => Err(Error::NotAPolynomialInX(format!("negative power {e} of an expression in x"))),
        }
    }

    fn atom(&mut self) -> Result<PolyX> {
        let f = self.field.clone();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'x' | b'X') => {
                self.pos += 1;
                Ok(PolyX::x(&f))
            }
            Some(b's') => {
                self.pos += 1;
                Ok(PolyX::constant(RatFunc::s(&f)))
            }
            Some(c) if c.is_ascii_digit() => {
                let p = f.characteristic();
                let v = self.integer_digits()?.iter().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(PolyX::constant(RatFunc::from_i64(&f, v as i64)))
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` into an exact polynomial in `x` over `F_p(s)`.
pub fn parse_poly(text: &str, p: u64) -> Result<PolyX> {
    let field = fq_field_make(p, 1)?;
    let mut parser = Parser { src: text.as_bytes(), pos: 0, field };
    let v = parser.expr()?;
    if let Some(c) = parser.peek() {
        return Err(syntax(parser.pos, format!("unexpected '{}'", c as char)));
    }
    Ok(v)
}
