//! Matrix units inside `Q[Z/2 wr Z]`.
//!
//! With `t a_p t^-1 = a_(p+1)` the unit is `E_ij = t^(j-i) chi_j`: the
//! conjugate `t^(i-j) chi_l t^(j-i)` lands on `chi_j` exactly when `l = i`.

use crate::algebra::{GroupElement, Lamplighter, RingElement};
use crate::rational::Rational;

use super::cylinder::{cylinder_to_ring, BitCylinder};
use super::DualityError;

/// Matrix sizes up to this bound are expanded; `chi_j` has `2^(n+2)` terms.
pub const MAX_EXPANDED_SIZE: usize = 12;

/// The window `[0 1 .. 1 0]` of `n` ones whose `j`-th one sits at position 0.
pub fn unit_cylinder(n: usize, j: usize) -> BitCylinder {
    let mut bits = vec![1u8; n + 2];
    bits[0] = 0;
    bits[n + 1] = 0;
    BitCylinder::pattern(-(j as i64), &bits)
}

fn check(n: usize, idx: &[usize]) -> Result<(), DualityError> {
    if n == 0 || idx.iter().any(|&i| i == 0 || i > n) {
        return Err(DualityError::IndexOutOfRange { n, index: idx.to_vec() });
    }
    if n > MAX_EXPANDED_SIZE {
        return Err(DualityError::TooLarge { what: "matrix size", size: n, limit: MAX_EXPANDED_SIZE });
    }
    Ok(())
}

pub fn chi(n: usize, j: usize) -> Result<RingElement, DualityError> {
    check(n, &[j])?;
    Ok(cylinder_to_ring(&unit_cylinder(n, j)))
}

pub fn matrix_unit(n: usize, i: usize, j: usize) -> Result<RingElement, DualityError> {
    check(n, &[i, j])?;
    let shift = RingElement::monomial(
        Lamplighter::new(1),
        GroupElement::shift_by(1, j as i64 - i as i64, 1),
        Rational::from_integer(1.into()),
    );
    Ok(shift.mul(&chi(n, j)?).expect("same group"))
}

/// `sum_ij m_ij E_ij`.
pub fn embed_matrix(m: &[Vec<Rational>]) -> Result<RingElement, DualityError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(DualityError::NotSquare);
    }
    if n == 0 {
        return Ok(RingElement::zero(Lamplighter::new(1)));
    }
    check(n, &[1])?;
    let group = Lamplighter::new(1);
    let chis: Vec<RingElement> = (1..=n).map(|j| chi(n, j)).collect::<Result<_, _>>()?;
    let mut terms = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c == &Rational::from_integer(0.into()) {
                continue;
            }
            let s = GroupElement::shift_by(1, j as i64 - i as i64, 1);
            for (g, d) in chis[j].terms() {
                terms.push((s.try_mul(g).expect("dim 1"), c * d));
            }
        }
    }
    Ok(RingElement::from_terms(group, terms))
}

/// Check `E_kl E_ij = delta_il E_kj` for all index quadruples; returns the
/// number of relations checked and the failing quadruples `(k, l, i, j)`.
pub fn verify_relations(n: usize) -> Result<(usize, Vec<[usize; 4]>), DualityError> {
    check(n, &[1])?;
    let units: Vec<Vec<RingElement>> = (1..=n)
        .map(|i| (1..=n).map(|j| matrix_unit(n, i, j)).collect())
        .collect::<Result<_, _>>()?;
    let zero = RingElement::zero(Lamplighter::new(1));
    let mut failures = Vec::new();
    for k in 0..n {
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let lhs = units[k][l].mul(&units[i][j]).expect("same group");
                    let rhs = if l == i { &units[k][j] } else { &zero };
                    if &lhs != rhs {
                        failures.push([k + 1, l + 1, i + 1, j + 1]);
                    }
                }
            }
        }
    }
    Ok((n.pow(4), failures))
}

/// Matrix trace over the von Neumann trace of its image: `2^(n+2)`.
pub fn matrix_unit_trace_scale(n: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(1) << (n + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn unit_window_layout() {
        let c = unit_cylinder(3, 2);
        let got: Vec<(i64, u8)> = c.constraints().iter().map(|(&p, &b)| (p, b)).collect();
        assert_eq!(got, vec![(-2, 0), (-1, 1), (0, 1), (1, 1), (2, 0)]);
    }

    #[test]
    fn relations_n2() {
        let e = |i, j| matrix_unit(2, i, j).unwrap();
        assert_eq!(e(1, 2).mul(&e(2, 1)).unwrap(), e(1, 1));
        assert!(e(1, 2).mul(&e(1, 1)).unwrap().is_zero());
        assert_eq!(e(1, 1).mul(&e(1, 1)).unwrap(), e(1, 1));
    }

    #[test]
    fn identity_trace() {
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let x = embed_matrix(&id).unwrap();
        assert_eq!(x.mul(&x).unwrap(), x);
        assert_eq!(x.trace_vn(), rat(1, 8));
    }

    #[test]
    fn all_relations_small() {
        for n in 1..=3 {
            for k in 1..=n {
                for l in 1..=n {
                    for i in 1..=n {
                        for j in 1..=n {
                            let p = matrix_unit(n, k, l).unwrap().mul(&matrix_unit(n, i, j).unwrap()).unwrap();
                            if l == i {
                                assert_eq!(p, matrix_unit(n, k, j).unwrap());
                            } else {
                                assert!(p.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matrix_unit(2, 3, 1).is_err());
        assert!(matrix_unit(2, 0, 1).is_err());
    }
}
