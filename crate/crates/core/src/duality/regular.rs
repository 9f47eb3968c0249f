//! Left regular representation of finite group rings.

use num_traits::Zero;

use crate::algebra::{GroupRingElem, RingElement};
use crate::rational::Rational;

use super::finite_group::FiniteGroupTable;
use super::matrix_units::{embed_matrix, MAX_EXPANDED_SIZE};
use super::DualityError;

/// `L(x)[i][j] = sum_g x_g [g * j == i]`.
pub fn regular_representation(h: &FiniteGroupTable, x: &GroupRingElem<usize>) -> Vec<Vec<Rational>> {
    let n = h.order();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (&g, c) in x.terms() {
        for j in 0..n {
            m[h.product(g, j)][j] += c;
        }
    }
    m
}

/// `embed_matrix(L(x))`, with trace scale `h 2^-(h+2)` on the identity coefficient.
pub fn embed_finite_group_ring(h: &FiniteGroupTable, x: &GroupRingElem<usize>) -> Result<RingElement, DualityError> {
    if h.order() > MAX_EXPANDED_SIZE {
        return Err(DualityError::TooLarge {
            what: "finite group order",
            size: h.order(),
            limit: MAX_EXPANDED_SIZE,
        });
    }
    embed_matrix(&regular_representation(h, x))
}

/// `h * 2^-(h+2)`.
pub fn regular_trace_scale(order: usize) -> Rational {
    Rational::new(order.into(), num_bigint::BigInt::from(1) << (order + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn z2_sum_of_elements() {
        let z2 = FiniteGroupTable::cyclic(2);
        let x = GroupRingElem::from_terms([(0usize, int(1)), (1usize, int(1))]);
        assert_eq!(regular_representation(&z2, &x), vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
    }

    #[test]
    fn embedded_traces() {
        let z2 = FiniteGroupTable::cyclic(2);
        let one = GroupRingElem::monomial(0usize, int(1));
        let s = GroupRingElem::monomial(1usize, int(1));
        assert_eq!(embed_finite_group_ring(&z2, &one).unwrap().trace_vn(), rat(1, 8));
        assert_eq!(embed_finite_group_ring(&z2, &s).unwrap().trace_vn(), int(0));
        assert_eq!(regular_trace_scale(2), rat(1, 8));
    }
}
