//! Finite groups given by explicit multiplication tables.

use crate::algebra::Group;

use super::f2::{AffineElem, F2Matrix};
use super::DualityError;

/// A finite group on `0..order` with a checked multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroupTable {
    /// Build from a row-major table, checking closure, associativity,
    /// identity and inverses.
    pub fn from_table(order: usize, table: Vec<usize>, labels: Vec<String>) -> Result<Self, DualityError> {
        let bad = |msg: &str| DualityError::NotAGroup(msg.to_string());
        if order == 0 || table.len() != order * order {
            return Err(bad("table size does not match order"));
        }
        if labels.len() != order {
            return Err(bad("label count does not match order"));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(bad("table entry out of range"));
        }
        let at = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| bad("no identity element"))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| bad("element without inverse"))?;
            inverse.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            order,
            table,
            identity,
            inverse,
            labels,
        })
    }

    /// `Z/k` with generator `1`.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let table = (0..k * k).map(|i| (i / k + i % k) % k).collect();
        let labels = (0..k).map(|i| i.to_string()).collect();
        FiniteGroupTable::from_table(k, table, labels).expect("cyclic table is a group")
    }

    /// `(Z/2)^n x| GL(n, 2)`, elements listed translation-major over the
    /// matrices of [`F2Matrix::general_linear`].
    pub fn affine(n: usize) -> Self {
        let elems = affine_elements(n);
        let index = |e: &AffineElem| elems.binary_search(e).expect("closed under product");
        let order = elems.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                table.push(index(&a.mul(b)));
            }
        }
        let labels = elems.iter().map(|e| e.to_string()).collect();
        FiniteGroupTable::from_table(order, table, labels).expect("affine group table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// Sorted list of all elements of `(Z/2)^n x| GL(n, 2)`.
pub fn affine_elements(n: usize) -> Vec<AffineElem> {
    let mats = F2Matrix::general_linear(n);
    let mut out: Vec<AffineElem> = (0..1u32 << n)
        .flat_map(|v| mats.iter().map(move |a| AffineElem { v, a: a.clone() }))
        .collect();
    out.sort();
    out
}

impl Group for FiniteGroupTable {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.product(*a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }
}

/// `(Z/2)^n x| GL(n, 2)` without a table; usable for any `n <= 32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineGroup {
    pub n: usize,
}

impl Group for AffineGroup {
    type Elem = AffineElem;

    fn identity(&self) -> AffineElem {
        AffineElem::identity(self.n)
    }

    fn mul(&self, a: &AffineElem, b: &AffineElem) -> AffineElem {
        a.mul(b)
    }

    fn inv(&self, a: &AffineElem) -> AffineElem {
        a.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_orders() {
        assert_eq!(FiniteGroupTable::affine(1).order(), 2);
        assert_eq!(FiniteGroupTable::affine(2).order(), 24);
    }

    #[test]
    fn rejects_non_groups() {
        // constant table: no identity
        let err = FiniteGroupTable::from_table(2, vec![0, 0, 0, 0], vec!["p".into(), "q".into()]);
        assert!(err.is_err());
        // Z/2 is fine
        assert!(FiniteGroupTable::from_table(2, vec![0, 1, 1, 0], vec!["e".into(), "s".into()]).is_ok());
    }

    #[test]
    fn cyclic_law() {
        let z5 = FiniteGroupTable::cyclic(5);
        assert_eq!(z5.product(3, 4), 2);
        assert_eq!(z5.inverse(2), 3);
        assert_eq!(z5.identity_index(), 0);
    }
}
