//! Text form of polynomials.
//!
//! ```text
//! poly  := ['-'] term (('+'|'-') term)*
//! term  := coeff ('*' monom)? | monom
//! monom := var ('^' uint)? ('*' var ('^' uint)?)*
//! coeff := uint
//! ```
//!
//! Whitespace is insignificant. A leading minus sign is accepted so that the
//! printed form of every polynomial parses back to itself.

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::Polynomial;

/// Parse a complete polynomial string.
pub fn parse_polynomial(src: &str, vars: &[String], field: PrimeField) -> Result<Polynomial> {
    let (p, used) = parse_polynomial_prefix(src, vars, field)?;
    if src[used..].trim().is_empty() {
        Ok(p)
    } else {
        Err(Error::Parse(format!(
            "unexpected `{}` at offset {used}",
            src[used..].trim()
        )))
    }
}

/// Parse the longest polynomial prefix of `src`; returns the polynomial and
/// the number of bytes consumed (trailing whitespace excluded).
pub fn parse_polynomial_prefix(src: &str, vars: &[String], field: PrimeField) -> Result<(Polynomial, usize)> {
    if vars.len() > MAX_VARS {
        return Err(Error::TooManyVariables {
            max: MAX_VARS,
            got: vars.len(),
        });
    }
    let mut p = Cursor {
        src: src.as_bytes(),
        pos: 0,
        vars,
        field,
    };
    let mut terms = Vec::new();
    p.skip_ws();
    let mut sign = Fp::ONE;
    if p.peek() == Some(b'-') {
        p.pos += 1;
        sign = field.neg(Fp::ONE);
    }
    loop {
        let (m, c) = p.term()?;
        terms.push((m, field.mul(c, sign)));
        let save = p.pos;
        p.skip_ws();
        match p.peek() {
            Some(b'+') => {
                p.pos += 1;
                sign = Fp::ONE;
            }
            Some(b'-') => {
                p.pos += 1;
                sign = field.neg(Fp::ONE);
            }
            _ => {
                p.pos = save;
                break;
            }
        }
    }
    Ok((Polynomial::from_terms(terms, field), p.pos))
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: PrimeField,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn term(&mut self) -> Result<(Monomial, Fp)> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    let m = self.monom()?;
                    Ok((m, c))
                } else {
                    self.pos = save;
                    Ok((Monomial::one(self.vars.len()), c))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => Ok((self.monom()?, Fp::ONE)),
            _ => Err(self.err("expected a term")),
        }
    }

    fn coeff(&mut self) -> Result<Fp> {
        let start = self.pos;
        let mut acc: u64 = 0;
        let p = self.field.characteristic() as u64;
        while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
            acc = (acc * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        Ok(self.field.element(acc as i64))
    }

    fn uint(&mut self) -> Result<u16> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<u16>().ok())
            .ok_or_else(|| self.err("expected an exponent"))
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a variable"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier"))
    }

    fn monom(&mut self) -> Result<Monomial> {
        let n = self.vars.len();
        let mut exps = vec![0u16; n];
        loop {
            let start = self.pos;
            let name = self.ident()?.to_string();
            let idx = match self.vars.iter().position(|v| *v == name) {
                Some(i) => i,
                None => {
                    self.pos = start;
                    return Err(self.err(&format!("unknown variable `{name}`")));
                }
            };
            let save = self.pos;
            self.skip_ws();
            let e = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.uint()?
            } else {
                self.pos = save;
                1
            };
            exps[idx] += e;
            let save = self.pos;
            self.skip_ws();
            // a '*' followed by a variable continues the monomial
            if self.peek() == Some(b'*') {
                let star = self.pos;
                self.pos += 1;
                self.skip_ws();
                if self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == b'_') {
                    continue;
                }
                self.pos = star;
            }
            self.pos = save;
            break;
        }
        Monomial::from_exponents(&exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_prints_back() {
        let f = PrimeField::new(32003).unwrap();
        for src in ["x^2*y - 3*y^2*z + x*y", "-x + 1", "0", "5", "x*y*z - z^3"] {
            let p = parse_polynomial(src, &vars(), f).unwrap();
            assert_eq!(p.display_with(&vars(), f).to_string(), src);
        }
    }

    #[test]
    fn whitespace_and_merging() {
        let f = PrimeField::new(101).unwrap();
        let p = parse_polynomial(" x * y + y*x - 2 * x*y ", &vars(), f).unwrap();
        assert!(p.is_zero());
        let q = parse_polynomial("x^2*x", &vars(), f).unwrap();
        assert_eq!(q.display_with(&vars(), f).to_string(), "x^3");
    }

    #[test]
    fn rejects_unknown_variables() {
        let f = PrimeField::new(101).unwrap();
        assert!(parse_polynomial("x + w", &vars(), f).is_err());
        assert!(parse_polynomial("x +", &vars(), f).is_err());
    }

    #[test]
    fn prefix_stops_at_delimiter() {
        let f = PrimeField::new(101).unwrap();
        let (p, used) = parse_polynomial_prefix("x*y, z]", &vars(), f).unwrap();
        assert_eq!(used, 3);
        assert_eq!(p.len(), 1);
    }
}
