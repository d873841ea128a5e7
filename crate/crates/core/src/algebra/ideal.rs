use std::sync::{Arc, OnceLock};

use super::dimension::krull_dimension_of_leading_terms;
use super::groebner::{groebner_basis, reduce, GroebnerBudget};
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{same_ring, Polynomial, Ring};
use super::AlgebraError;

/// Ideal given by generators, with a lazily filled reduced Gröbner basis per order.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    grevlex: OnceLock<Vec<Polynomial>>,
    lex: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            grevlex: self.grevlex.clone(),
            lex: self.lex.clone(),
        }
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        if generators.iter().any(|g| !same_ring(ring, g.ring())) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            grevlex: OnceLock::new(),
            lex: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// New ideal with extra generators appended.
    pub fn extended(&self, more: impl IntoIterator<Item = Polynomial>) -> Result<Ideal, AlgebraError> {
        let mut gens = self.generators.clone();
        gens.extend(more);
        Ideal::new(&self.ring, gens)
    }

    fn slot(&self, order: MonomialOrder) -> &OnceLock<Vec<Polynomial>> {
        match order {
            MonomialOrder::GrevLex => &self.grevlex,
            MonomialOrder::Lex => &self.lex,
        }
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner(&self, order: MonomialOrder, budget: GroebnerBudget) -> Result<&[Polynomial], AlgebraError> {
        let slot = self.slot(order);
        if let Some(gb) = slot.get() {
            return Ok(gb);
        }
        let gb = groebner_basis(&self.generators, order, budget)?;
        Ok(slot.get_or_init(|| gb))
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(
        &self,
        order: MonomialOrder,
        budget: GroebnerBudget,
    ) -> Result<Vec<Monomial>, AlgebraError> {
        Ok(self
            .groebner(order, budget)?
            .iter()
            .map(|g| g.leading_term(order).expect("nonzero basis element").0.clone())
            .collect())
    }

    /// Krull dimension of the quotient ring; `-1` for the unit ideal.
    pub fn krull_dimension(&self, order: MonomialOrder, budget: GroebnerBudget) -> Result<i64, AlgebraError> {
        let lms = self.leading_monomials(order, budget)?;
        Ok(krull_dimension_of_leading_terms(&lms, self.ring.nvars()))
    }

    /// Membership test through the reduced Gröbner basis.
    pub fn contains(&self, f: &Polynomial, order: MonomialOrder, budget: GroebnerBudget) -> Result<bool, AlgebraError> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        let gb = self.groebner(order, budget)?;
        Ok(reduce(f, gb, order)?.is_zero())
    }

    pub fn is_unit(&self, order: MonomialOrder, budget: GroebnerBudget) -> Result<bool, AlgebraError> {
        Ok(self.groebner(order, budget)?.iter().any(|g| g.is_constant()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn hypersurface_dimension_and_membership() {
        let r = Ring::new(["x1", "x2", "xi1", "xi2"]);
        let f = r.var(0).mul(&r.var(2)).sub(&r.var(1).mul(&r.var(3)));
        let ideal = Ideal::new(&r, vec![f.clone()]).unwrap();
        let b = GroebnerBudget::default();
        assert_eq!(ideal.krull_dimension(MonomialOrder::GrevLex, b).unwrap(), 3);
        assert_eq!(ideal.krull_dimension(MonomialOrder::Lex, b).unwrap(), 3);
        assert!(ideal.contains(&f.mul(&r.var(0)), MonomialOrder::GrevLex, b).unwrap());
        assert!(!ideal.contains(&r.var(0), MonomialOrder::GrevLex, b).unwrap());
    }

    #[test]
    fn point_and_unit_ideal() {
        let r = Ring::new(["x", "y"]);
        let b = GroebnerBudget::default();
        let pt = Ideal::new(&r, vec![r.var(0), r.var(1)]).unwrap();
        assert_eq!(pt.krull_dimension(MonomialOrder::GrevLex, b).unwrap(), 0);
        let unit = Ideal::new(&r, vec![r.constant(rat(3, 1))]).unwrap();
        assert_eq!(unit.krull_dimension(MonomialOrder::GrevLex, b).unwrap(), -1);
        assert!(unit.is_unit(MonomialOrder::GrevLex, b).unwrap());
        let zero = Ideal::new(&r, vec![]).unwrap();
        assert_eq!(zero.krull_dimension(MonomialOrder::GrevLex, b).unwrap(), 2);
    }
}
