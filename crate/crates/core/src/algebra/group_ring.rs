//! Finitely supported rational combinations of group elements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group::Group;
use crate::rational::{abs_sum, lcm_of_denominators, Rational};

/// `sum c_g g` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElem<E: Ord> {
    terms: BTreeMap<E, Rational>,
}

impl<E: Ord + Clone> Default for GroupRingElem<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Ord + Clone> GroupRingElem<E> {
    pub fn zero() -> Self {
        GroupRingElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(g: E, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(g, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (E, Rational)>) -> Self {
        let mut out = Self::zero();
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn add_term(&mut self, g: E, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (E, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, g: &E) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &E> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        GroupRingElem {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), c * factor))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn mul<G: Group<Elem = E>>(&self, other: &Self, group: &G) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                out.add_term(group.mul(g, h), c * d);
            }
        }
        out
    }

    pub fn pow<G: Group<Elem = E>>(&self, exponent: u32, group: &G) -> Self {
        let mut out = Self::monomial(group.identity(), Rational::one());
        for _ in 0..exponent {
            out = out.mul(self, group);
        }
        out
    }

    /// `sum c_g g  ->  sum c_g g^-1`.
    pub fn star<G: Group<Elem = E>>(&self, group: &G) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (group.inv(g), c.clone())))
    }

    /// Coefficient of the identity.
    pub fn trace<G: Group<Elem = E>>(&self, group: &G) -> Rational {
        self.coeff(&group.identity())
    }

    /// Linear extension of an element map (a homomorphism when `f` is one).
    pub fn map_elements<F: Ord + Clone>(&self, mut f: impl FnMut(&E) -> F) -> GroupRingElem<F> {
        GroupRingElem::from_terms(self.terms.iter().map(|(g, c)| (f(g), c.clone())))
    }

    pub fn coefficient_abs_sum(&self) -> Rational {
        abs_sum(self.terms.values())
    }

    pub fn denominator_lcm(&self) -> BigInt {
        lcm_of_denominators(self.terms.values())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lamplighter::{GroupElement, Lamplighter};
    use crate::rational::{int, rat};

    #[test]
    fn one_minus_a_times_one_plus_a_vanishes() {
        let g = Lamplighter::new(1);
        let e = GroupElement::identity(1);
        let a = GroupElement::a(1, 1);
        let x = GroupRingElem::from_terms([(e.clone(), int(1)), (a.clone(), int(-1))]);
        let y = GroupRingElem::from_terms([(e, int(1)), (a, int(1))]);
        assert!(x.mul(&y, &g).is_zero());
    }

    #[test]
    fn half_projection_is_idempotent() {
        let g = Lamplighter::new(1);
        let p = GroupRingElem::from_terms([
            (GroupElement::identity(1), rat(1, 2)),
            (GroupElement::a(1, 1), rat(-1, 2)),
        ]);
        assert_eq!(p.mul(&p, &g), p);
        let q = GroupRingElem::from_terms([
            (GroupElement::identity(1), rat(1, 2)),
            (GroupElement::a(1, 1), rat(1, 2)),
        ]);
        assert_eq!(q.mul(&q, &g).trace(&g), rat(1, 2));
    }

    #[test]
    fn star_inverts_support() {
        let g = Lamplighter::new(1);
        let t = GroupRingElem::monomial(GroupElement::t(1, 1), int(1));
        let s = t.star(&g);
        assert_eq!(s.support().next().unwrap(), &GroupElement::t(1, 1).inv());
    }
}
