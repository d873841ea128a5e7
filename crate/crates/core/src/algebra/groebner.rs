use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{same_ring, Polynomial, Ring};
use super::{AlgebraError, Rational};

type Term = (Monomial, Rational);

/// Caps on the work a single Gröbner computation may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBudget {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: usize,
    /// Maximum number of terms held by the basis under construction.
    pub max_terms: usize,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_pairs: 200_000,
            max_terms: 20_000_000,
        }
    }
}

impl GroebnerBudget {
    pub fn unlimited() -> Self {
        GroebnerBudget {
            max_pairs: usize::MAX,
            max_terms: usize::MAX,
        }
    }
}

/// Polynomial with terms sorted decreasingly under the working order.
#[derive(Clone, Debug)]
struct Ordered {
    terms: Vec<Term>,
    sugar: u32,
    mask: u64,
}

impl Ordered {
    fn new(terms: Vec<Term>, sugar: u32) -> Self {
        let mask = terms.first().map(|(m, _)| m.mask()).unwrap_or(0);
        Ordered { terms, sugar, mask }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let lc = self.terms[0].1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in self.terms.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

fn sorted_terms(p: &Polynomial, order: MonomialOrder) -> Vec<Term> {
    let mut terms = p.terms().to_vec();
    if order != MonomialOrder::GrevLex {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    terms
}

/// Computes `p - c * q * g` where every sequence is sorted decreasingly.
fn sub_scaled(p: &[Term], c: &Rational, q: &Monomial, g: &[Term], order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(m, d)| (m.mul(q), d)).peekable();
    loop {
        match (p.get(i), gi.peek()) {
            (None, None) => break,
            (Some(t), None) => {
                out.push(t.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let (m, d) = gi.next().unwrap();
                out.push((m, -(c * d)));
            }
            (Some(t), Some((m, d))) => match order.cmp(&t.0, m) {
                Ordering::Greater => {
                    out.push(t.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = -(c * *d);
                    let (m, _) = gi.next().unwrap();
                    out.push((m, v));
                }
                Ordering::Equal => {
                    let v = &t.1 - c * *d;
                    if !v.is_zero() {
                        out.push((t.0.clone(), v));
                    }
                    i += 1;
                    gi.next();
                }
            },
        }
    }
    out
}

fn find_reducer<'a>(m: &Monomial, basis: &'a [Ordered], active: &[bool]) -> Option<&'a Ordered> {
    let mask = m.mask();
    basis
        .iter()
        .zip(active)
        .filter(|(_, &a)| a)
        .map(|(g, _)| g)
        .find(|g| g.mask & !mask == 0 && g.lm().divides(m))
}

/// Full normal form of `f` with respect to the monic elements of `basis`.
///
/// Returns the remainder and the largest sugar met along the way.
fn normal_form(
    f: Vec<Term>,
    mut sugar: u32,
    basis: &[Ordered],
    active: &[bool],
    order: MonomialOrder,
) -> (Vec<Term>, u32) {
    let mut rem: Vec<Term> = Vec::new();
    let mut p = f;
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match find_reducer(m, basis, active) {
            Some(g) => {
                let q = g.lm().quotient_of(m).expect("reducer divides");
                sugar = sugar.max(g.sugar + q.degree());
                let c = c.clone();
                p = sub_scaled(&p[start..], &c, &q, &g.terms, order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    (rem, sugar)
}

fn check_rings(ring: &Arc<Ring>, polys: &[Polynomial]) -> Result<(), AlgebraError> {
    if polys.iter().all(|p| same_ring(ring, p.ring())) {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch)
    }
}

fn to_ordered(p: &Polynomial, order: MonomialOrder) -> Ordered {
    let mut o = Ordered::new(sorted_terms(p, order), p.total_degree().unwrap_or(0));
    o.make_monic();
    o
}

/// Remainder of `f` under multivariate division by `basis`.
///
/// No term of the result is divisible by a leading term of `basis`, and
/// `f` minus the result lies in the ideal generated by `basis`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial, AlgebraError> {
    check_rings(f.ring(), basis)?;
    let ordered: Vec<Ordered> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| to_ordered(b, order))
        .collect();
    let active = vec![true; ordered.len()];
    let (rem, _) = normal_form(sorted_terms(f, order), 0, &ordered, &active, order);
    Ok(Polynomial::from_terms(f.ring(), rem))
}

/// S-polynomial of `f` and `g` under `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Result<Polynomial, AlgebraError> {
    f.check_ring(g)?;
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(f.ring()));
    }
    let a = to_ordered(f, order);
    let b = to_ordered(g, order);
    let s = spoly_terms(&a, &b, order);
    Ok(Polynomial::from_terms(f.ring(), s))
}

fn spoly_terms(a: &Ordered, b: &Ordered, order: MonomialOrder) -> Vec<Term> {
    let l = a.lm().lcm(b.lm());
    let qa = a.lm().quotient_of(&l).unwrap();
    let qb = b.lm().quotient_of(&l).unwrap();
    let ta: Vec<Term> = a.terms[1..].iter().map(|(m, c)| (m.mul(&qa), c.clone())).collect();
    sub_scaled(&ta, &Rational::one(), &qb, &b.terms[1..], order)
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial], order: MonomialOrder) -> bool {
    let nonzero: Vec<&Polynomial> = basis.iter().filter(|p| !p.is_zero()).collect();
    let owned: Vec<Polynomial> = nonzero.iter().map(|p| (*p).clone()).collect();
    for i in 0..owned.len() {
        for j in (i + 1)..owned.len() {
            let s = match s_polynomial(&owned[i], &owned[j], order) {
                Ok(s) => s,
                Err(_) => return false,
            };
            match reduce(&s, &owned, order) {
                Ok(r) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    order: MonomialOrder,
    basis: Vec<Ordered>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    budget: GroebnerBudget,
    total_terms: usize,
}

impl Engine {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let lcm = a.lm().lcm(b.lm());
        let sa = a.sugar + lcm.degree() - a.lm().degree();
        let sb = b.sugar + lcm.degree() - b.lm().degree();
        Pair {
            i,
            j,
            lcm,
            sugar: sa.max(sb),
        }
    }

    /// Inserts `h` and updates the pair list with the Gebauer–Möller criteria.
    fn insert(&mut self, h: Ordered) -> Result<(), AlgebraError> {
        self.total_terms += h.terms.len();
        if self.total_terms > self.budget.max_terms {
            return Err(AlgebraError::Budget {
                what: "basis terms",
                limit: self.budget.max_terms,
            });
        }
        let hi = self.basis.len();
        let hlm = h.lm().clone();
        self.basis.push(h);
        self.active.push(true);

        let mut fresh: Vec<Pair> = (0..hi).filter(|&g| self.active[g]).map(|g| self.pair(g, hi)).collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::with_capacity(fresh.len());
        fresh.sort_by(|a, b| self.order.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)));
        for idx in 0..fresh.len() {
            let p = &fresh[idx];
            let coprime = self.basis[p.i].lm().is_coprime(&hlm);
            if coprime {
                kept.push(p.clone());
                continue;
            }
            let dominated = fresh[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if !dominated {
                kept.push(p.clone());
            }
        }
        // product criterion
        kept.retain(|p| !self.basis[p.i].lm().is_coprime(&hlm));

        // drop old pairs whose lcm is strictly divisible through h
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let l1 = basis[p.i].lm().lcm(&hlm);
            let l2 = basis[p.j].lm().lcm(&hlm);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && hlm.divides(self.basis[g].lm()) {
                self.active[g] = false;
            }
        }
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then(a.j.cmp(&b.j))
                    .then(a.i.cmp(&b.i))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn reduce_and_insert(&mut self, terms: Vec<Term>, sugar: u32) -> Result<(), AlgebraError> {
        let (rem, sugar) = normal_form(terms, sugar, &self.basis, &self.active, self.order);
        if rem.is_empty() {
            return Ok(());
        }
        if rem.len() > self.budget.max_terms {
            return Err(AlgebraError::Budget {
                what: "basis terms",
                limit: self.budget.max_terms,
            });
        }
        let mut h = Ordered::new(rem, sugar);
        h.make_monic();
        self.insert(h)
    }

    fn run(&mut self) -> Result<(), AlgebraError> {
        let mut processed = 0usize;
        while let Some(p) = self.next_pair() {
            processed += 1;
            if processed > self.budget.max_pairs {
                return Err(AlgebraError::Budget {
                    what: "S-pairs",
                    limit: self.budget.max_pairs,
                });
            }
            let s = spoly_terms(&self.basis[p.i], &self.basis[p.j], self.order);
            self.reduce_and_insert(s, p.sugar)?;
        }
        Ok(())
    }

    /// Interreduces the active elements into the reduced Gröbner basis.
    fn reduced(&self) -> Vec<Ordered> {
        let idx: Vec<usize> = (0..self.basis.len()).filter(|&k| self.active[k]).collect();
        let mut out = Vec::with_capacity(idx.len());
        for &k in &idx {
            let mut others = self.active.clone();
            others[k] = false;
            let g = &self.basis[k];
            let (tail, _) = normal_form(g.terms[1..].to_vec(), g.sugar, &self.basis, &others, self.order);
            let mut terms = Vec::with_capacity(tail.len() + 1);
            terms.push(g.terms[0].clone());
            terms.extend(tail);
            out.push(Ordered::new(terms, g.sugar));
        }
        out.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        out
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Buchberger's algorithm with the Gebauer–Möller pair criteria and the
/// sugar selection strategy. The output is monic, interreduced and sorted
/// by increasing leading monomial, so it depends only on the ideal and the
/// order. Exceeding `budget` aborts with [`AlgebraError::Budget`].
pub fn groebner_basis(
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: GroebnerBudget,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    check_rings(&ring, gens)?;
    let mut input: Vec<Ordered> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_ordered(g, order))
        .collect();
    input.sort_by(|a, b| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(a.lm(), b.lm())));

    let mut engine = Engine {
        order,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        budget,
        total_terms: 0,
    };
    for g in input {
        // Finish lower-degree pairs first so inputs meet a fuller basis.
        let sugar = g.sugar;
        while engine.pairs.iter().any(|p| p.sugar < sugar) {
            let mut low: Vec<Pair> = Vec::new();
            let mut rest: Vec<Pair> = Vec::new();
            for p in engine.pairs.drain(..) {
                if p.sugar < sugar {
                    low.push(p);
                } else {
                    rest.push(p);
                }
            }
            engine.pairs = low;
            engine.run()?;
            engine.pairs.extend(rest);
        }
        engine.reduce_and_insert(g.terms, g.sugar)?;
        if engine
            .basis
            .iter()
            .zip(&engine.active)
            .any(|(b, &a)| a && b.lm().is_one())
        {
            break;
        }
    }
    engine.run()?;
    Ok(engine
        .reduced()
        .into_iter()
        .map(|o| Polynomial::from_terms(&ring, o.terms))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ring_xy() -> Arc<Ring> {
        Ring::new(["x", "y"])
    }

    #[test]
    fn reduce_examples() {
        let r = ring_xy();
        let x = r.var(0);
        let y = r.var(1);
        let x2 = x.mul(&x);
        assert!(reduce(&x2, std::slice::from_ref(&x), MonomialOrder::GrevLex)
            .unwrap()
            .is_zero());
        assert_eq!(
            reduce(&x2.add(&y), std::slice::from_ref(&x), MonomialOrder::GrevLex).unwrap(),
            y
        );
    }

    #[test]
    fn small_basis_is_sorted_and_reduced() {
        let r = ring_xy();
        let x = r.var(0);
        let y = r.var(1);
        let gb = groebner_basis(
            &[x.mul(&x).sub(&y), y.clone()],
            MonomialOrder::GrevLex,
            GroebnerBudget::default(),
        )
        .unwrap();
        assert_eq!(gb, vec![y, x.mul(&x)]);
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let r = Ring::new(["x1", "x2", "xi1", "xi2"]);
        let f = r.var(0).mul(&r.var(2)).sub(&r.var(1).mul(&r.var(3)));
        let gb = groebner_basis(
            std::slice::from_ref(&f),
            MonomialOrder::GrevLex,
            GroebnerBudget::default(),
        )
        .unwrap();
        assert_eq!(gb, vec![f]);
    }

    #[test]
    fn classic_cyclic_three() {
        let r = Ring::new(["a", "b", "c"]);
        let (a, b, c) = (r.var(0), r.var(1), r.var(2));
        let one = r.constant(rat(1, 1));
        let gens = vec![
            a.add(&b).add(&c),
            a.mul(&b).add(&b.mul(&c)).add(&c.mul(&a)),
            a.mul(&b).mul(&c).sub(&one),
        ];
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = groebner_basis(&gens, order, GroebnerBudget::default()).unwrap();
            assert!(is_groebner_basis(&gb, order));
            for g in &gens {
                assert!(reduce(g, &gb, order).unwrap().is_zero());
            }
        }
        let lex = groebner_basis(&gens, MonomialOrder::Lex, GroebnerBudget::default()).unwrap();
        assert_eq!(lex[0].to_string(), "c^3 - 1");
    }

    #[test]
    fn unit_ideal_collapses_to_one() {
        let r = ring_xy();
        let x = r.var(0);
        let gens = vec![x.clone(), x.sub(&r.constant(rat(1, 1)))];
        let gb = groebner_basis(&gens, MonomialOrder::GrevLex, GroebnerBudget::default()).unwrap();
        assert_eq!(gb, vec![r.constant(rat(1, 1))]);
    }

    #[test]
    fn budget_aborts() {
        let r = Ring::new(["a", "b", "c"]);
        let (a, b, c) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![
            a.mul(&a).sub(&b.mul(&c)),
            b.mul(&b).sub(&a.mul(&c)),
            c.mul(&c).sub(&a.mul(&b)),
        ];
        let tiny = GroebnerBudget {
            max_pairs: 1,
            max_terms: 1_000,
        };
        let err = groebner_basis(&gens, MonomialOrder::GrevLex, tiny).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn generator_order_does_not_matter() {
        let r = Ring::new(["a", "b", "c"]);
        let (a, b, c) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![
            a.mul(&a).sub(&b.mul(&c)),
            b.mul(&b).sub(&a.mul(&c)).add(&a),
            c.mul(&c).sub(&a.mul(&b)),
        ];
        let mut rev = gens.clone();
        rev.reverse();
        let o = MonomialOrder::GrevLex;
        assert_eq!(
            groebner_basis(&gens, o, GroebnerBudget::default()).unwrap(),
            groebner_basis(&rev, o, GroebnerBudget::default()).unwrap()
        );
    }
}
