//! Text grammar for Laurent polynomials:
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := uint | 'v' ['^' int] | 'q' ['^' int] | '(' expr ')'
//! ```
//!
//! `q` abbreviates `v^{2n}` and is only accepted when a rank is supplied.

use num_bigint::BigInt;

use super::laurent::LaurentScalar;
use crate::error::{Error, Result};

pub(crate) struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    pub fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    pub fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let u = self.uint()?;
        let u: i64 = u.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -u } else { u })
    }

    pub fn small_uint(&mut self) -> Result<usize> {
        let u = self.uint()?;
        u.try_into().map_err(|_| self.err("index out of range"))
    }
}

/// Parse a Laurent polynomial; `rank` enables the `q` abbreviation.
pub fn parse_laurent(src: &str, rank: Option<usize>) -> Result<LaurentScalar> {
    let mut lx = Lexer::new(src);
    let out = laurent_expr(&mut lx, rank)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(out)
}

pub(crate) fn laurent_expr(lx: &mut Lexer, rank: Option<usize>) -> Result<LaurentScalar> {
    let mut acc = LaurentScalar::zero();
    let mut neg = false;
    if lx.eat('-') {
        neg = true;
    } else {
        lx.eat('+');
    }
    loop {
        let t = laurent_term(lx, rank)?;
        acc = if neg { &acc - &t } else { &acc + &t };
        if lx.eat('+') {
            neg = false;
        } else if lx.eat('-') {
            neg = true;
        } else {
            return Ok(acc);
        }
    }
}

fn laurent_term(lx: &mut Lexer, rank: Option<usize>) -> Result<LaurentScalar> {
    let mut acc = laurent_factor(lx, rank)?;
    while lx.eat('*') {
        acc = &acc * &laurent_factor(lx, rank)?;
    }
    Ok(acc)
}

fn laurent_factor(lx: &mut Lexer, rank: Option<usize>) -> Result<LaurentScalar> {
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => Ok(LaurentScalar::constant(lx.uint()?)),
        Some('v') => {
            lx.bump();
            let e = if lx.eat('^') { lx.int()? } else { 1 };
            Ok(LaurentScalar::v_pow(e))
        }
        Some('q') => {
            lx.bump();
            let n = rank.ok_or_else(|| lx.err("'q' needs a known rank"))?;
            let e = if lx.eat('^') { lx.int()? } else { 1 };
            Ok(LaurentScalar::v_pow(2 * n as i64 * e))
        }
        Some('(') => {
            lx.bump();
            let inner = laurent_expr(lx, rank)?;
            lx.expect(')')?;
            Ok(inner)
        }
        _ => Err(lx.err("expected a number, 'v', 'q' or '('")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_rendering() {
        for s in ["-v^6 + 1 + 3*v^-2", "0", "v", "-v^4 - v^-4", "v^10 + v^2", "-1"] {
            let x = parse_laurent(s, None).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn q_abbreviation() {
        let x = parse_laurent("q - q^-1", Some(2)).unwrap();
        assert_eq!(x.to_string(), "v^4 - v^-4");
        assert!(parse_laurent("q", None).is_err());
    }

    #[test]
    fn products_and_parentheses() {
        let x = parse_laurent("2*(v + 1)*v^-1", None).unwrap();
        assert_eq!(x.to_string(), "2 + 2*v^-1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_laurent("v^", None).is_err());
        assert!(parse_laurent("3 v", None).is_err());
        assert!(parse_laurent("", None).is_err());
    }
}
