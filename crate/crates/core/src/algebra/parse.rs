//! Polynomial expressions over ℚ in named variables.
//!
//! Grammar: sums and differences of products; factors are rationals,
//! variables, parenthesized expressions, and `^` with a nonnegative integer
//! exponent. Juxtaposition multiplies (`3t(t-7)`), and `/` divides by a
//! nonzero constant.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MPoly, Rational};
use crate::{Error, Result};

pub fn parse_mpoly<const N: usize>(src: &str, vars: &[&str; N]) -> Result<MPoly<N>> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, vars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a, const N: usize> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [&'a str; N],
}

impl<const N: usize> Parser<'_, N> {
    fn err(&self, what: &str) -> Error {
        let rest = String::from_utf8_lossy(&self.s[self.pos.min(self.s.len())..]);
        Error::invalid(format!("{what} at column {} (near {:?})", self.pos + 1, rest.chars().take(12).collect::<String>()))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly<N>> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<MPoly<N>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = constant_of(&d).ok_or_else(|| self.err("division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly<N>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.err("expected an exponent"))?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn atom(&mut self) -> Result<MPoly<N>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().expect("digit present");
                Ok(MPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable '{name}'")))
                    }
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

fn constant_of<const N: usize>(p: &MPoly<N>) -> Option<Rational> {
    match p.total_degree() {
        None => Some(Rational::zero()),
        Some(0) => Some(p.coeff(&[0; N])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    const V: [&str; 2] = ["t", "x"];

    #[test]
    fn juxtaposition_and_powers() {
        let p = parse_mpoly("3t(t-7)", &V).unwrap();
        assert_eq!(p.coeff(&[2, 0]), int(3));
        assert_eq!(p.coeff(&[1, 0]), int(-21));
        let q = parse_mpoly("-(t + x)^2 / 4 + 1/2", &V).unwrap();
        assert_eq!(q.coeff(&[1, 1]), rat(-1, 2));
        assert_eq!(q.coeff(&[0, 0]), rat(1, 2));
    }

    #[test]
    fn errors_point_at_input() {
        assert!(parse_mpoly("t + y", &V).unwrap_err().to_string().contains("unknown variable 'y'"));
        assert!(parse_mpoly("t/x", &V).is_err());
        assert!(parse_mpoly("(t", &V).is_err());
        assert!(parse_mpoly("t/0", &V).is_err());
    }
}
