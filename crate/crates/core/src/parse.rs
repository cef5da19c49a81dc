//! Polynomial expression parser.
//!
//! Grammar: variables `[a-zA-Z][a-zA-Z0-9_]*`, integer and `p/q` rational
//! literals, operators `+ - * ^` with `^` binding tightest, then unary
//! minus, then `*`, then binary `+ -`. Exponents are nonnegative integer
//! literals and multiplication is always explicit (`2*x`, never `2x`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::Polynomial;
use crate::ring::RingContext;

/// Parse failure with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_polynomial(src: &str, ring: &RingContext) -> Result<Polynomial, ParseError> {
    let mut parser = Parser::new(src, ring);
    if parser.peek().is_none() {
        return Err(parser.error_here("empty polynomial expression"));
    }
    let p = parser.expr()?;
    match parser.peek() {
        None => Ok(p),
        Some(_) => Err(parser.error_here("unexpected trailing input")),
    }
}

struct Parser<'a> {
    ring: &'a RingContext,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &'a RingContext) -> Self {
        Parser {
            ring,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.line_col(pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                // adjacency like `2x` or `x(…)` is a deliberate error
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    return Err(self.error_here(
                        "multiplication must be explicit (write `2*x`, not `2x`)",
                    ));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            Ok(-self.factor()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let exp = self.natural()?;
        let exp: u32 = exp
            .try_into()
            .map_err(|_| self.error_at(at, "malformed exponent: too large"))?;
        if self.peek() == Some('^') {
            return Err(self.error_here("malformed exponent: chained `^`"));
        }
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error_here("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            Some(c) => Err(self.error_here(format!("unexpected character `{c}`"))),
            None => Err(self.error_here("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<u64, ParseError> {
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.error_here("expected a nonnegative integer")),
        }
        let mut digits = String::new();
        while let Some(c) = self.chars.get(self.pos).copied() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        digits
            .parse::<u64>()
            .map_err(|_| self.error_at(at, "malformed exponent: too large"))
    }

    fn rational(&mut self) -> Result<Polynomial, ParseError> {
        let numer = self.big_natural()?;
        let denom = if self.eat('/') {
            let at = self.pos;
            let d = self.big_natural()?;
            if d.is_zero() {
                return Err(self.error_at(at, "zero denominator in rational literal"));
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(Polynomial::constant(
            self.ring,
            BigRational::new(numer, denom),
        ))
    }

    fn big_natural(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.error_here("expected an integer")),
        }
        let mut digits = String::new();
        while let Some(c) = self.chars.get(self.pos).copied() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(digits.parse::<BigInt>().expect("digits parse as BigInt"))
    }

    fn variable(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.pos;
        let mut name = String::new();
        while let Some(c) = self.chars.get(self.pos).copied() {
            if c.is_ascii_alphanumeric() || c == '_' {
                name.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Polynomial::variable(self.ring, &name)
            .map_err(|_| self.error_at(at, format!("unknown variable `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn ring(vars: &[&str]) -> RingContext {
        RingContext::new(vars.to_vec()).unwrap()
    }

    #[test]
    fn parses_curve_generator() {
        let r = ring(&["w1", "w2", "w3"]);
        let p = parse_polynomial("w2^2 - w3^3 - w3", &r).unwrap();
        assert_eq!(p.render(), "-w3^3 + w2^2 - w3");
    }

    #[test]
    fn parses_zero_and_constants() {
        let r = ring(&["x"]);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        assert_eq!(
            parse_polynomial("3/4 - 1/4 - 1/2", &r).unwrap(),
            Polynomial::zero(&r)
        );
    }

    #[test]
    fn binomial_square_expands() {
        let r = ring(&["c", "b"]);
        assert_eq!(
            parse_polynomial("(1 + c*b)^2", &r).unwrap(),
            parse_polynomial("1 + 2*c*b + c^2*b^2", &r).unwrap()
        );
    }

    #[test]
    fn precedence_and_unary_minus() {
        let r = ring(&["x"]);
        // ^ binds tighter than unary minus
        assert_eq!(
            parse_polynomial("-x^2", &r).unwrap(),
            -parse_polynomial("x^2", &r).unwrap()
        );
        assert_eq!(
            parse_polynomial("-2*x", &r).unwrap(),
            parse_polynomial("0 - 2*x", &r).unwrap()
        );
        assert_eq!(
            parse_polynomial("1 - -x", &r).unwrap(),
            parse_polynomial("1 + x", &r).unwrap()
        );
    }

    #[test]
    fn errors_carry_position() {
        let r = ring(&["x"]);
        let e = parse_polynomial("x + y", &r).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(e.message.contains("unknown variable"));

        let e = parse_polynomial("2x", &r).unwrap_err();
        assert!(e.message.contains("explicit"));

        let e = parse_polynomial("x^", &r).unwrap_err();
        assert!(e.message.contains("integer"));

        let e = parse_polynomial("x^2^3", &r).unwrap_err();
        assert!(e.message.contains("chained"));

        let e = parse_polynomial("1/0", &r).unwrap_err();
        assert!(e.message.contains("denominator"));

        assert!(parse_polynomial("", &r).is_err());
        assert!(parse_polynomial("(x", &r).is_err());
        assert!(parse_polynomial("x )", &r).is_err());
    }

    #[test]
    fn rational_literals() {
        let r = ring(&["x"]);
        let p = parse_polynomial("5/3*x", &r).unwrap();
        assert_eq!(p.render(), "5/3*x");
        assert_eq!(
            parse_polynomial("6/4", &r).unwrap(),
            Polynomial::constant(&r, int(3) / int(2))
        );
    }
}
