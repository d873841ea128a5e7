use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::{AlgebraError, Rational};

/// Polynomial ring over the rationals with named variables.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), index), Rational::one())
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> Polynomial {
        Polynomial::monomial(self, Monomial::one(self.nvars()), c)
    }

    /// True when `other` is a prefix-compatible extension of `self`.
    pub fn is_prefix_of(&self, other: &Ring) -> bool {
        other.names.len() >= self.names.len() && other.names[..self.names.len()] == self.names[..]
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted by decreasing grevlex order with no zero
/// coefficients; two polynomials are equal iff their term lists are.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

const CANONICAL: MonomialOrder = MonomialOrder::GrevLex;

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        for (m, _) in &v {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length differs from ring");
        }
        v.sort_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: merged,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| CANONICAL.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                CANONICAL.cmp(&self.terms[i].0, &other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c.clone() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves any monomial order
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_monomial(m, c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            Some((Monomial::from_exponents(exps), c * Rational::from_integer(e.into())))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Re-embeds into `ring`, which must extend this ring's variable list.
    pub fn extend_to(&self, ring: &Arc<Ring>) -> Result<Polynomial, AlgebraError> {
        if !self.ring.is_prefix_of(ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let n = ring.nvars();
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.extend(n), c.clone())).collect(),
        })
    }

    /// Evaluates at a point of any commutative ring that contains the rationals.
    pub fn evaluate<T: EvalRing>(&self, values: &[T]) -> T {
        assert_eq!(values.len(), self.ring.nvars());
        let mut total = T::zero_like(values);
        for (m, c) in &self.terms {
            let mut t = T::from_rational(c, values);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&values[i]);
                }
            }
            total = total.add(&t);
        }
        total
    }

    /// Substitutes rational values for a subset of variables.
    pub fn partial_eval(&self, assignments: &[(usize, Rational)]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = m.exponents().to_vec();
            let mut coeff = c.clone();
            for (v, val) in assignments {
                let e = exps[*v];
                if e > 0 {
                    for _ in 0..e {
                        coeff *= val;
                    }
                    exps[*v] = 0;
                }
            }
            (Monomial::from_exponents(exps), coeff)
        });
        Polynomial::from_terms(&self.ring, terms)
    }
}

/// Minimal arithmetic needed to evaluate a polynomial.
pub trait EvalRing: Clone {
    /// Zero element shaped like the provided values.
    fn zero_like(values: &[Self]) -> Self;
    fn from_rational(c: &Rational, values: &[Self]) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl EvalRing for Rational {
    fn zero_like(_: &[Self]) -> Self {
        Rational::zero()
    }
    fn from_rational(c: &Rational, _: &[Self]) -> Self {
        c.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(self.ring.names(), f)?;
            }
        }
        Ok(())
    }
}
