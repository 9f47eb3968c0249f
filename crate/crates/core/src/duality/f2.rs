//! Linear algebra over GF(2) on bit-packed vectors (`n <= 32`).

use std::fmt;

/// An `n x n` matrix over GF(2) stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    n: usize,
    cols: Vec<u32>,
}

impl F2Matrix {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 32);
        F2Matrix {
            n,
            cols: (0..n).map(|i| 1u32 << i).collect(),
        }
    }

    pub fn from_cols(n: usize, cols: Vec<u32>) -> Self {
        assert!(n <= 32 && cols.len() == n);
        let mask = mask(n);
        assert!(cols.iter().all(|c| c & !mask == 0), "column exceeds dimension");
        F2Matrix { n, cols }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0;
        for (i, c) in self.cols.iter().enumerate() {
            if x >> i & 1 == 1 {
                out ^= c;
            }
        }
        out
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        F2Matrix {
            n: self.n,
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut cols = vec![0u32; self.n];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, col) in cols.iter_mut().enumerate() {
                if c >> i & 1 == 1 {
                    *col |= 1 << j;
                }
            }
        }
        F2Matrix { n: self.n, cols }
    }

    pub fn is_identity(&self) -> bool {
        *self == F2Matrix::identity(self.n)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<F2Matrix> {
        let n = self.n;
        // rows of [A | I]
        let t = self.transpose();
        let mut rows: Vec<(u32, u32)> = (0..n).map(|i| (t.cols[i], 1u32 << i)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r].0 >> col & 1 == 1)?;
            rows.swap(col, pivot);
            let (pa, pb) = rows[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && row.0 >> col & 1 == 1 {
                    row.0 ^= pa;
                    row.1 ^= pb;
                }
            }
        }
        let inv_rows = F2Matrix {
            n,
            cols: rows.into_iter().map(|(_, b)| b).collect(),
        };
        Some(inv_rows.transpose())
    }

    /// All invertible `n x n` matrices in increasing column order.
    pub fn general_linear(n: usize) -> Vec<F2Matrix> {
        assert!(n <= 4, "GL(n, 2) enumeration is limited to n <= 4");
        let size = 1u64 << (n * n);
        let mut out = Vec::new();
        for code in 0..size {
            let cols: Vec<u32> = (0..n).map(|j| ((code >> (j * n)) & mask(n) as u64) as u32).collect();
            let m = F2Matrix { n, cols };
            if m.inverse().is_some() {
                out.push(m);
            }
        }
        out
    }
}

pub fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn dot(x: u32, y: u32) -> u32 {
    (x & y).count_ones() & 1
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.cols.iter().map(u32::to_string).collect();
        write!(f, "{}", cols.join("."))
    }
}

/// The transvection `x -> x + phi(x) (from + to)` with `phi(from) = 1` and
/// `phi(from + to) = 0`; it sends `from` to `to` and squares to the identity.
/// `from` and `to` must be distinct and nonzero.
pub fn transvection(n: usize, from: u32, to: u32) -> F2Matrix {
    assert!(from != 0 && to != 0 && from != to);
    let d = from ^ to;
    // phi with phi.from = 1 and phi.to = 1 (equivalently phi.d = 0)
    let phi = (1..=mask(n))
        .find(|&f| dot(f, from) == 1 && dot(f, to) == 1)
        .expect("distinct nonzero vectors are independent");
    let cols = (0..n)
        .map(|i| {
            let e = 1u32 << i;
            if dot(phi, e) == 1 {
                e ^ d
            } else {
                e
            }
        })
        .collect();
    F2Matrix { n, cols }
}

/// Element `(v, A)` of `(Z/2)^n x| GL(n, 2)` with `(v,A)(w,B) = (v + Aw, AB)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElem {
    pub v: u32,
    pub a: F2Matrix,
}

impl AffineElem {
    pub fn identity(n: usize) -> Self {
        AffineElem {
            v: 0,
            a: F2Matrix::identity(n),
        }
    }

    pub fn linear(a: F2Matrix) -> Self {
        AffineElem { v: 0, a }
    }

    pub fn translation(n: usize, v: u32) -> Self {
        AffineElem {
            v,
            a: F2Matrix::identity(n),
        }
    }

    pub fn mul(&self, other: &AffineElem) -> AffineElem {
        AffineElem {
            v: self.v ^ self.a.apply(other.v),
            a: self.a.mul(&other.a),
        }
    }

    pub fn inv(&self) -> AffineElem {
        let ai = self.a.inverse().expect("affine elements are invertible");
        AffineElem {
            v: ai.apply(self.v),
            a: ai,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.v == 0 && self.a.is_identity()
    }
}

impl fmt::Display for AffineElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.v, self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_and_gl3_orders() {
        assert_eq!(F2Matrix::general_linear(1).len(), 1);
        assert_eq!(F2Matrix::general_linear(2).len(), 6);
        assert_eq!(F2Matrix::general_linear(3).len(), 168);
    }

    #[test]
    fn inverse_round_trip() {
        for m in F2Matrix::general_linear(3) {
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).is_identity());
            assert!(inv.mul(&m).is_identity());
        }
        let singular = F2Matrix::from_cols(2, vec![1, 1]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn transvections_send_and_square_to_identity() {
        for n in 2..=4usize {
            for from in 1..(1u32 << n) {
                for to in 1..(1u32 << n) {
                    if from == to {
                        continue;
                    }
                    let g = transvection(n, from, to);
                    assert_eq!(g.apply(from), to);
                    assert!(g.mul(&g).is_identity());
                }
            }
        }
    }

    #[test]
    fn affine_group_law() {
        let a = AffineElem { v: 1, a: transvection(2, 1, 2) };
        let b = AffineElem { v: 3, a: F2Matrix::identity(2) };
        assert!(a.mul(&a.inv()).is_identity());
        assert_eq!(a.mul(&b).mul(&a.inv()), a.mul(&b.mul(&a.inv())));
    }
}
