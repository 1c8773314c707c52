//! Recursive-descent reader for the polynomial text grammar.
//!
//! Accepts everything [`Poly`]'s `Display` and [`Poly::pretty`] print, plus
//! general `+ - * ^` expressions with parentheses and division by nonzero
//! constants. A rational literal directly followed by `i` (`1/2i`) is a single
//! imaginary coefficient.

use num_bigint::BigInt;

use super::{GaussianRational, Poly, Rational, VariableFrame};
use crate::ParseError;

pub fn parse_poly(text: &str, frame: VariableFrame) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, frame };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    frame: VariableFrame,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
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

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = match d.homogeneous_degree() {
                    Some(0) => d.terms().values().next().cloned(),
                    _ => None,
                };
                let inv = c.and_then(|c| c.inv().ok()).ok_or(ParseError::Syntax {
                    position: at,
                    message: "divisor must be a nonzero constant".into(),
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.error("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.error(&format!("unexpected character `{}`", c as char))),
        }
    }

    fn literal(&mut self) -> Result<Poly, ParseError> {
        let num = self.digits().expect("caller checked for a digit");
        let mut q = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
        // `p/q` only binds as a literal when digits follow the slash directly.
        if self.peek() == Some(b'/')
            && matches!(self.src.get(self.pos + 1), Some(c) if c.is_ascii_digit())
        {
            self.pos += 1;
            let at = self.pos;
            let den: BigInt = self.digits().expect("checked").parse().expect("digits");
            if den == BigInt::from(0) {
                return Err(ParseError::Syntax { position: at, message: "zero denominator".into() });
            }
            q /= Rational::from_integer(den);
        }
        let mut c = GaussianRational::from_rational(q);
        if self.peek() == Some(b'i')
            && !matches!(self.src.get(self.pos + 1), Some(c) if c.is_ascii_alphanumeric())
        {
            self.pos += 1;
            c = &c * &GaussianRational::i();
        }
        Ok(Poly::constant(self.frame, c))
    }

    fn identifier(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        if let Some(i) = self.frame.var_index(&name) {
            return Ok(Poly::var(self.frame, i));
        }
        if name == "i" {
            return Ok(Poly::constant(self.frame, GaussianRational::i()));
        }
        Err(ParseError::UnknownVariable { name, frame: self.frame, position: start })
    }
}
