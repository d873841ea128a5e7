//! Plain-text polynomial format.
//!
//! A system file holds a `ring:` line listing the variables, then one
//! polynomial per line written as a sum of explicit monomials such as
//! `-3/2*x0_1^2*xi0_2 + x0_1`. Lines starting with `#` are comments.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::{Polynomial, Ring};
use super::{AlgebraError, Rational};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len() && f(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii slice")
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at byte {}", self.pos))
    }
}

fn parse_integer(c: &mut Cursor<'_>) -> Result<BigInt, AlgebraError> {
    c.skip_ws();
    let digits = c.take_while(|b| b.is_ascii_digit());
    if digits.is_empty() {
        return Err(c.err("expected integer"));
    }
    digits.parse::<BigInt>().map_err(|e| c.err(&e.to_string()))
}

fn parse_term(c: &mut Cursor<'_>, ring: &Arc<Ring>) -> Result<(Monomial, Rational), AlgebraError> {
    let n = ring.nvars();
    let mut exps = vec![0u16; n];
    let mut coeff = Rational::one();
    loop {
        match c.peek() {
            Some(b) if b.is_ascii_digit() => {
                let num = parse_integer(c)?;
                let value = if c.peek() == Some(b'/') {
                    c.bump();
                    let den = parse_integer(c)?;
                    if den.is_zero() {
                        return Err(c.err("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                coeff *= value;
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let name = c.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                let idx = ring
                    .index_of(name)
                    .ok_or_else(|| AlgebraError::Parse(format!("unknown variable `{name}`")))?;
                let mut e = 1u16;
                if c.peek() == Some(b'^') {
                    c.bump();
                    let v = parse_integer(c)?;
                    e = u16::try_from(v).map_err(|_| c.err("exponent too large"))?;
                }
                exps[idx] = exps[idx].checked_add(e).ok_or_else(|| c.err("exponent too large"))?;
            }
            _ => return Err(c.err("expected coefficient or variable")),
        }
        if c.peek() == Some(b'*') {
            c.bump();
        } else {
            break;
        }
    }
    Ok((Monomial::from_exponents(exps), coeff))
}

/// Parses a polynomial written with the variables of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, AlgebraError> {
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match c.peek() {
            None if !first => break,
            None => return Err(c.err("empty polynomial")),
            Some(b'+') => c.bump(),
            Some(b'-') => {
                negative = true;
                c.bump();
            }
            Some(_) if first => {}
            Some(_) => return Err(c.err("expected `+` or `-`")),
        }
        let (m, coeff) = parse_term(&mut c, ring)?;
        terms.push((m, if negative { -coeff } else { coeff }));
        first = false;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Serializes a system in the plain-text format.
pub fn write_system(ring: &Ring, polys: &[Polynomial]) -> String {
    let mut out = String::new();
    out.push_str("ring: ");
    out.push_str(&ring.names().join(" "));
    out.push('\n');
    for p in polys {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

/// Reads a system written by [`write_system`].
pub fn parse_system(text: &str) -> Result<(Arc<Ring>, Vec<Polynomial>), AlgebraError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| AlgebraError::Parse("missing ring line".into()))?;
    let names = header
        .strip_prefix("ring:")
        .ok_or_else(|| AlgebraError::Parse("first line must start with `ring:`".into()))?;
    let ring = Ring::new(names.split_whitespace());
    let polys = lines
        .map(|l| parse_polynomial(l, &ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ring, polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn round_trip() {
        let r = Ring::new(["x0_1", "xi0_1"]);
        let p = parse_polynomial("-3/2*x0_1^2*xi0_1 + x0_1 - 4", &r).unwrap();
        assert_eq!(p.to_string(), "-3/2*x0_1^2*xi0_1 + x0_1 - 4");
        let text = write_system(&r, &[p.clone(), r.var(1)]);
        let (r2, polys) = parse_system(&text).unwrap();
        assert_eq!(r2.names(), r.names());
        assert_eq!(polys[0].to_string(), p.to_string());
        assert_eq!(polys[1].to_string(), "xi0_1");
    }

    #[test]
    fn repeated_factors_multiply() {
        let r = Ring::new(["x"]);
        let p = parse_polynomial("2*x*x*3/4", &r).unwrap();
        assert_eq!(p.coefficient(&Monomial::from_exponents(vec![2])), rat(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        let r = Ring::new(["x"]);
        assert!(parse_polynomial("x + y", &r).is_err());
        assert!(parse_polynomial("x +", &r).is_err());
        assert!(parse_polynomial("", &r).is_err());
        assert!(parse_polynomial("1/0", &r).is_err());
    }
}
