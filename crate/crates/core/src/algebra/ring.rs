//! Rational group-ring elements over a lamplighter descriptor.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group::Group;
use super::group_ring::GroupRingElem;
use super::lamplighter::{GroupElement, Lamplighter};
use super::AlgebraError;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    group: Lamplighter,
    elem: GroupRingElem<GroupElement>,
}

impl RingElement {
    pub fn zero(group: Lamplighter) -> Self {
        RingElement {
            group,
            elem: GroupRingElem::zero(),
        }
    }

    pub fn one(group: Lamplighter) -> Self {
        Self::monomial(group, GroupElement::identity(group.dim), Rational::one())
    }

    pub fn monomial(group: Lamplighter, g: GroupElement, coeff: Rational) -> Self {
        Self::from_terms(group, [(g, coeff)])
    }

    /// Terms are reduced into canonical form for `group` and accumulated.
    pub fn from_terms(
        group: Lamplighter,
        terms: impl IntoIterator<Item = (GroupElement, Rational)>,
    ) -> Self {
        let elem = GroupRingElem::from_terms(terms.into_iter().map(|(g, c)| {
            assert_eq!(g.dim(), group.dim, "element dimension must match the descriptor");
            (group.canonical(&g), c)
        }));
        RingElement { group, elem }
    }

    pub fn from_elem(group: Lamplighter, elem: GroupRingElem<GroupElement>) -> Self {
        Self::from_terms(group, elem.into_terms())
    }

    pub fn group(&self) -> Lamplighter {
        self.group
    }

    pub fn elem(&self) -> &GroupRingElem<GroupElement> {
        &self.elem
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Rational)> {
        self.elem.terms()
    }

    pub fn coeff(&self, g: &GroupElement) -> Rational {
        self.elem.coeff(g)
    }

    pub fn len(&self) -> usize {
        self.elem.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.group != other.group {
            return Err(AlgebraError::DescriptorMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(RingElement {
            group: self.group,
            elem: self.elem.add(&other.elem),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(RingElement {
            group: self.group,
            elem: self.elem.sub(&other.elem),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(RingElement {
            group: self.group,
            elem: self.elem.mul(&other.elem, &self.group),
        })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        RingElement {
            group: self.group,
            elem: self.elem.scale(factor),
        }
    }

    pub fn star(&self) -> Self {
        RingElement {
            group: self.group,
            elem: self.elem.star(&self.group),
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.star() == *self
    }

    pub fn pow(&self, exponent: u32) -> Self {
        RingElement {
            group: self.group,
            elem: self.elem.pow(exponent, &self.group),
        }
    }

    /// Von Neumann trace: the coefficient of the identity.
    pub fn trace_vn(&self) -> Rational {
        self.elem.trace(&self.group)
    }

    pub fn identity(&self) -> GroupElement {
        self.group.identity()
    }
}

/// Replaces `T` by `T*T / s` where `s` is the absolute coefficient sum of
/// `T*T`, and returns it with the lcm `C` of its denominators.
///
/// The result is self-adjoint, positive, and its coefficients have absolute
/// sum exactly one, so its convolution operators have norm at most one.
pub fn normalize_positive(t: &RingElement) -> Result<(RingElement, BigInt), AlgebraError> {
    if t.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let gram = t.star().mul(t)?;
    let s = gram.elem.coefficient_abs_sum();
    debug_assert!(!s.is_zero());
    let p = gram.scale(&(Rational::one() / s));
    let c = p.elem.denominator_lcm();
    Ok((p, c))
}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&super::text::to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn l1() -> Lamplighter {
        Lamplighter::new(1)
    }

    fn one_minus(g: GroupElement) -> RingElement {
        RingElement::from_terms(l1(), [(GroupElement::identity(1), int(1)), (g, int(-1))])
    }

    #[test]
    fn normalize_one_minus_a() {
        let (p, c) = normalize_positive(&one_minus(GroupElement::a(1, 1))).unwrap();
        let expected = RingElement::from_terms(
            l1(),
            [(GroupElement::identity(1), rat(1, 2)), (GroupElement::a(1, 1), rat(-1, 2))],
        );
        assert_eq!(p, expected);
        assert_eq!(c, BigInt::from(2));
    }

    #[test]
    fn normalize_one_minus_t() {
        let t = GroupElement::t(1, 1);
        let (p, c) = normalize_positive(&one_minus(t.clone())).unwrap();
        let expected = RingElement::from_terms(
            l1(),
            [
                (GroupElement::identity(1), rat(1, 2)),
                (t.clone(), rat(-1, 4)),
                (t.inv(), rat(-1, 4)),
            ],
        );
        assert_eq!(p, expected);
        assert_eq!(c, BigInt::from(4));
        assert!(p.is_self_adjoint());
    }

    #[test]
    fn normalize_identity_is_identity() {
        let (p, c) = normalize_positive(&RingElement::one(l1())).unwrap();
        assert_eq!(p, RingElement::one(l1()));
        assert_eq!(c, BigInt::from(1));
    }

    #[test]
    fn normalize_zero_signals() {
        assert!(matches!(
            normalize_positive(&RingElement::zero(l1())),
            Err(AlgebraError::ZeroInput)
        ));
    }

    #[test]
    fn descriptor_mismatch() {
        let x = RingElement::one(l1());
        let y = RingElement::one(Lamplighter::new(2));
        assert!(matches!(x.add(&y), Err(AlgebraError::DescriptorMismatch)));
        let z = RingElement::one(Lamplighter::quotient(1, 4));
        assert!(matches!(x.mul(&z), Err(AlgebraError::DescriptorMismatch)));
    }

    #[test]
    fn traces() {
        assert_eq!(RingElement::one(l1()).trace_vn(), int(1));
        let t = RingElement::monomial(l1(), GroupElement::t(1, 1), int(1));
        assert_eq!(t.trace_vn(), int(0));
        assert_eq!(t.star().coeff(&GroupElement::t(1, 1).inv()), int(1));
        let half = RingElement::from_terms(
            l1(),
            [(GroupElement::identity(1), rat(1, 2)), (GroupElement::a(1, 1), rat(1, 2))],
        );
        assert_eq!(half.mul(&half).unwrap().trace_vn(), rat(1, 2));
    }
}
