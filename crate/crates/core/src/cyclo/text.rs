//! Text form: rationals as `-3/2`, irrationals as sums of terms such as
//! `E(5)`, `-E(5)^2` or `2*E(12)^7`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Cyclotomic;
use crate::error::{Error, Result};

pub(super) fn render(x: &Cyclotomic) -> String {
    let n = x.conductor();
    if n == 1 {
        return x.coords()[0].to_string();
    }
    let mut out = String::new();
    for (i, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = if i == 0 {
            c.to_string()
        } else {
            let atom = if i == 1 { format!("E({n})") } else { format!("E({n})^{i}") };
            if c.is_one() {
                atom
            } else if (-c).is_one() {
                format!("-{atom}")
            } else {
                format!("{c}*{atom}")
            }
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", ch as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v: i64 = self
            .integer()?
            .try_into()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(if negative { -v } else { v })
    }

    fn factor(&mut self) -> Result<Cyclotomic> {
        match self.peek() {
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.small_int()?;
                if n <= 0 {
                    return Err(self.error("conductor must be positive"));
                }
                self.expect(b')')?;
                let k = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.small_int()?
                } else {
                    1
                };
                Cyclotomic::root_of_unity(n, k)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Cyclotomic::from_rational(BigRational::new(num, den)))
            }
            _ => Err(self.error("expected a number or `E(n)`")),
        }
    }

    fn term(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Cyclotomic> {
        let mut acc = Cyclotomic::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                None if !first => break,
                _ if first => 1,
                _ => return Err(self.error("expected `+` or `-`")),
            };
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }
}

pub(super) fn parse(s: &str) -> Result<Cyclotomic> {
    let mut p = Parser {
        bytes: s.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    p.expr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonical_forms() {
        assert_eq!(parse("-3/2").unwrap().to_string(), "-3/2");
        assert_eq!(parse("E(3)").unwrap().to_string(), "E(3)");
        // ζ_3² = -1 - ζ_3
        assert_eq!(parse("E(3)^2").unwrap().to_string(), "-1-E(3)");
        assert_eq!(parse("E(5)^2*2").unwrap().to_string(), "2*E(5)^2");
        assert_eq!(parse("0").unwrap().to_string(), "0");
    }

    #[test]
    fn accepts_negative_exponents_and_spaces() {
        assert_eq!(parse("E(7)^-1").unwrap(), parse("E(7)^6").unwrap());
        assert_eq!(parse(" 2 * E(5) + 2*E(5)^4 ").unwrap(), parse("2*E(5)+2*E(5)^4").unwrap());
        assert_eq!(parse("-E(4)+E(4)").unwrap(), Cyclotomic::zero());
    }

    #[test]
    fn reports_error_columns() {
        for (text, col) in [("E(5", 4), ("2+", 3), ("2 3", 3), ("E(0)", 4), ("1/0", 4), ("", 1)] {
            match parse(text) {
                Err(Error::Parse { column, .. }) => assert_eq!(column, col, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
