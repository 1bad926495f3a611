use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SyntaxError;
use crate::cyclotomic::Cyclotomic;

/// Render at the minimal conductor, terms by ascending exponent of `E(n)`.
pub fn render_cyclo(z: &Cyclotomic) -> String {
    let n = z.conductor();
    let den = z.denominator();
    let mut out = String::new();
    for (i, c) in z.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let coeff = if den.is_one() { abs.to_string() } else { format!("{abs}/{den}") };
        if i == 0 || n == 1 {
            out.push_str(&coeff);
            continue;
        }
        if coeff != "1" {
            out.push_str(&coeff);
            out.push('*');
        }
        out.push_str(&format!("E({n})"));
        if i > 1 {
            out.push_str(&format!("^{i}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, expected: &str) -> SyntaxError {
        SyntaxError::new(1, self.pos + 1, expected)
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

    fn expect(&mut self, c: u8) -> Result<(), SyntaxError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("'{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn expr(&mut self) -> Result<Cyclotomic, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, SyntaxError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| SyntaxError::new(1, at + 1, "nonzero divisor"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Cyclotomic, SyntaxError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Cyclotomic, SyntaxError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e: u64 = self.integer()?.try_into().map_err(|_| SyntaxError::new(1, at + 1, "small exponent"))?;
        let value = base.pow(e);
        if negative {
            value.inverse().map_err(|_| SyntaxError::new(1, at + 1, "nonzero base"))
        } else {
            Ok(value)
        }
    }

    fn atom(&mut self) -> Result<Cyclotomic, SyntaxError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let at = self.pos;
                let n: u32 = self
                    .integer()?
                    .try_into()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| SyntaxError::new(1, at + 1, "positive conductor"))?;
                self.expect(b')')?;
                Ok(Cyclotomic::root_of_unity(n, 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(Cyclotomic::from_bigint(self.integer()?)),
            _ => Err(self.err("integer, E(n) or '('")),
        }
    }
}

/// Parse an expression over integers, `/`, `E(n)`, `^`, `*`, `+`, `-` and parentheses.
pub fn parse_cyclo(text: &str) -> Result<Cyclotomic, SyntaxError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("end of input"));
    }
    Ok(value)
}
