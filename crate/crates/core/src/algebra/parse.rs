//! Text grammar for polynomials and rational functions in `t`.
//!
//! ```text
//! ratfunc := poly ( '/' poly )?
//! poly    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := ('-' | '+') factor | atom ('^' integer)?
//! atom    := integer | 't' | '(' poly ')'
//! ```

use num_bigint::BigInt;

use super::poly::PolyZ;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() })
    }

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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn poly(&mut self) -> Result<PolyZ> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyZ> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyZ> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = match e.try_into() {
                Ok(e) if e <= 10_000 => e,
                _ => return self.err("exponent too large"),
            };
            let mut acc = PolyZ::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyZ> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(p)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(PolyZ::var())
            }
            Some(c) if c.is_ascii_digit() => Ok(PolyZ::constant(self.integer()?)),
            Some(b'/') => self.err("'/' is only allowed at top level"),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parser(src: &str, line: usize, col0: usize) -> Parser<'_> {
    Parser { src: src.as_bytes(), pos: 0, line, col0 }
}

/// Parses a polynomial expression with integer coefficients.
pub fn parse_poly(src: &str) -> Result<PolyZ> {
    parse_poly_at(src, 1, 0)
}

fn parse_poly_at(src: &str, line: usize, col0: usize) -> Result<PolyZ> {
    let mut p = parser(src, line, col0);
    let out = p.poly()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses `poly` or `poly / poly`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    parse_ratfunc_at(src, 1, 0)
}

/// As [`parse_ratfunc`], reporting positions relative to a line of a file
/// whose expression starts at column `col0 + 1`.
pub fn parse_ratfunc_at(src: &str, line: usize, col0: usize) -> Result<RatFunc> {
    let mut p = parser(src, line, col0);
    let num = p.poly()?;
    if p.eat(b'/') {
        let den = p.poly()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        if den.is_zero() {
            return p.err("zero denominator");
        }
        return RatFunc::new(num, den);
    }
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(RatFunc::from_poly(num))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        assert_eq!(parse_poly("(1 - t - t^2)").unwrap(), PolyZ::from_i64s(&[1, -1, -1]));
        assert_eq!(parse_poly("-2*(2*t-1)^2").unwrap(), PolyZ::from_i64s(&[-2, 8, -8]));
        assert_eq!(parse_poly("t^2*t + 3").unwrap(), PolyZ::from_i64s(&[3, 0, 0, 1]));
    }

    #[test]
    fn parses_quotients() {
        let r = parse_ratfunc("(t^4+4*t^2+2)/(t^2+1)^2").unwrap();
        assert_eq!(r.num(), &PolyZ::from_i64s(&[2, 0, 4, 0, 1]));
        assert_eq!(r.den(), &PolyZ::from_i64s(&[1, 0, 2, 0, 1]));
    }

    #[test]
    fn reports_columns() {
        match parse_ratfunc("1 + x") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_ratfunc("(1+t)/(t)/t").is_err());
        assert!(parse_ratfunc("(1/t)").is_err());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("").is_err());
    }
}
