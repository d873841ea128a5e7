use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Monomial orders supported by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Degree reverse lexicographic.
    #[default]
    GrevLex,
    /// Pure lexicographic, variables ordered as in the ring.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    if x != y {
                        // the smaller trailing exponent is the larger monomial
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" | "degrevlex" => Ok(MonomialOrder::GrevLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

/// Exponent vector over a fixed number of ring variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[u16]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0u16; nvars];
        exps[index] = 1;
        Monomial {
            exps: exps.into_boxed_slice(),
            deg: 1,
        }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            deg,
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit mask of the variables that occur, folded modulo 64.
    ///
    /// If `a.mask() & !b.mask() != 0` then `a` does not divide `b`.
    pub fn mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Box<[u16]> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exponents(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Pads with zero exponents up to `nvars` variables.
    pub fn extend(&self, nvars: usize) -> Monomial {
        assert!(nvars >= self.nvars());
        let mut exps = self.exps.to_vec();
        exps.resize(nvars, 0);
        Monomial {
            exps: exps.into_boxed_slice(),
            deg: self.deg,
        }
    }

    pub(crate) fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", names[i])?;
            } else {
                write!(f, "{}^{}", names[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let ord = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(ord.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_compares_first_variable() {
        let ord = MonomialOrder::Lex;
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 1, 1])));
        assert_eq!(a.mask() & !b.mask(), 0);
    }
}
