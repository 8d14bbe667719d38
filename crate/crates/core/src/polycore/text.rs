//! Text form of polynomials: sums of monomials `c*x^i*y^j` with exact
//! rational `c`. The printer (`Display` on [`BivPoly`]) emits a canonical flat
//! form; the parser additionally accepts parentheses and powers of groups.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BivPoly, PlaneRationalFunction, PolyError, Rational};

pub fn parse_poly(input: &str) -> Result<BivPoly, PolyError> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser {
        input,
        chars,
        pos: 0,
    };
    if parser.chars.is_empty() {
        return Err(parser.error("empty expression"));
    }
    let p = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

/// Accepts `(num) / (den)` or a plain polynomial.
pub fn parse_rational_function(input: &str) -> Result<PlaneRationalFunction, PolyError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((n, d)) = split_top_level_quotient(&compact) {
        return PlaneRationalFunction::new(parse_poly(n)?, parse_poly(d)?);
    }
    Ok(PlaneRationalFunction::from_poly(parse_poly(input)?))
}

fn split_top_level_quotient(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 && s[..i].ends_with(')') && s[i + 1..].starts_with('(') => {
                return Some((&s[..i], &s[i + 1..]));
            }
            _ => {}
        }
    }
    None
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> PolyError {
        PolyError::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BivPoly, PolyError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
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

    fn term(&mut self) -> Result<BivPoly, PolyError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<BivPoly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivPoly, PolyError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(BivPoly::x())
            }
            Some('y') => {
                self.pos += 1;
                Ok(BivPoly::y())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("missing `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value /= Rational::from_integer(d);
                }
                if self.peek() == Some('.') {
                    return Err(self.error("decimal coefficients are not accepted"));
                }
                Ok(BivPoly::constant(value))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("bad integer"))
    }
}
