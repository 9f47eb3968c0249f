//! Cylinder sets of `(Z/2)^Z` and their idempotents in the lamp subgroup.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Factor, GroupElement, Lamplighter, RingElement};
use crate::rational::{rat, Rational};

/// Finitely many positions pinned to bits; the empty cylinder is the full space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitCylinder {
    constraints: BTreeMap<i64, u8>,
}

impl BitCylinder {
    pub fn full() -> Self {
        BitCylinder::default()
    }

    pub fn new(constraints: impl IntoIterator<Item = (i64, u8)>) -> Self {
        let mut map = BTreeMap::new();
        for (p, b) in constraints {
            assert!(b <= 1, "bits are 0 or 1");
            let prev = map.insert(p, b);
            assert!(prev.is_none() || prev == Some(b), "conflicting constraint at {p}");
        }
        BitCylinder { constraints: map }
    }

    /// Consecutive bits starting at `start`.
    pub fn pattern(start: i64, bits: &[u8]) -> Self {
        BitCylinder::new(bits.iter().enumerate().map(|(i, &b)| (start + i as i64, b)))
    }

    pub fn constraints(&self) -> &BTreeMap<i64, u8> {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Intersection; `None` when the constraints conflict.
    pub fn intersect(&self, other: &BitCylinder) -> Option<BitCylinder> {
        let mut out = self.constraints.clone();
        for (&p, &b) in &other.constraints {
            if let Some(&old) = out.get(&p) {
                if old != b {
                    return None;
                }
            }
            out.insert(p, b);
        }
        Some(BitCylinder { constraints: out })
    }

    pub fn translate(&self, by: i64) -> BitCylinder {
        BitCylinder {
            constraints: self.constraints.iter().map(|(&p, &b)| (p + by, b)).collect(),
        }
    }

    /// Haar measure `2^-k`.
    pub fn measure(&self) -> Rational {
        Rational::new(1.into(), num_bigint::BigInt::one() << self.constraints.len())
    }

    pub fn contains(&self, config: impl Fn(i64) -> u8) -> bool {
        self.constraints.iter().all(|(&p, &b)| config(p) == b)
    }
}

/// `prod_p (1 + (-1)^b a_p) / 2` inside factor `factor` of `group`.
pub fn cylinder_to_ring_in(c: &BitCylinder, group: Lamplighter, factor: usize) -> RingElement {
    let positions: Vec<(i64, u8)> = c.constraints.iter().map(|(&p, &b)| (p, b)).collect();
    let k = positions.len();
    assert!(k < 31, "cylinder too long to expand");
    let scale = c.measure();
    let mut terms = Vec::with_capacity(1 << k);
    for subset in 0u32..(1 << k) {
        let mut lamps = Vec::new();
        let mut negative = false;
        for (i, &(p, b)) in positions.iter().enumerate() {
            if subset >> i & 1 == 1 {
                lamps.push(p);
                negative ^= b == 1;
            }
        }
        let mut factors = vec![Factor::identity(); group.dim];
        factors[factor] = Factor::new(lamps, 0);
        let coeff = if negative { -scale.clone() } else { scale.clone() };
        terms.push((GroupElement::from_factors(factors), coeff));
    }
    RingElement::from_terms(group, terms)
}

/// Cylinder idempotent in the single lamplighter `Z/2 wr Z`.
pub fn cylinder_to_ring(c: &BitCylinder) -> RingElement {
    cylinder_to_ring_in(c, Lamplighter::new(1), 0)
}

/// Coefficient of the character `prod_{p in S} a_p` in the idempotent of `c`;
/// zero unless `S` lies inside the constrained positions.
pub fn character_coefficient(c: &BitCylinder, subset: &[i64]) -> Rational {
    let mut sign = 1;
    for p in subset {
        match c.constraints.get(p) {
            None => return Rational::zero(),
            Some(1) => sign = -sign,
            Some(_) => {}
        }
    }
    c.measure() * rat(sign, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_space_is_one() {
        assert_eq!(cylinder_to_ring(&BitCylinder::full()), RingElement::one(Lamplighter::new(1)));
    }

    #[test]
    fn single_position_idempotent() {
        let chi = cylinder_to_ring(&BitCylinder::new([(0, 0)]));
        assert_eq!(chi.mul(&chi).unwrap(), chi);
        assert_eq!(chi.trace_vn(), rat(1, 2));
        assert_eq!(chi.coeff(&GroupElement::a(1, 1)), rat(1, 2));
    }

    #[test]
    fn underlined_window_trace() {
        let chi = cylinder_to_ring(&BitCylinder::pattern(-1, &[0, 1, 0]));
        assert_eq!(chi.len(), 8);
        assert_eq!(chi.trace_vn(), rat(1, 8));
        assert_eq!(chi.mul(&chi).unwrap(), chi);
        let lamp = GroupElement::lamp(1, 0, 1);
        assert_eq!(chi.coeff(&lamp), rat(-1, 8));
        assert_eq!(character_coefficient(&BitCylinder::pattern(-1, &[0, 1, 0]), &[0]), rat(-1, 8));
    }

    #[test]
    fn disjoint_cylinders_annihilate() {
        let x = cylinder_to_ring(&BitCylinder::new([(2, 0)]));
        let y = cylinder_to_ring(&BitCylinder::new([(2, 1), (3, 0)]));
        assert!(x.mul(&y).unwrap().is_zero());
    }
}
