//! Finite quotients `(Z/2 wr Z/N)^d`, convolution matrices and exact kernels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{Factor, Group, GroupElement, Lamplighter, RingElement};
use crate::rational::Rational;

use super::SpectralError;

/// Default cap on matrix size.
pub const DEFAULT_MAX_SIZE: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteQuotient {
    pub modulus: u32,
    pub dim: usize,
}

impl FiniteQuotient {
    pub fn group(&self) -> Lamplighter {
        Lamplighter::quotient(self.dim, self.modulus)
    }

    /// `(N 2^N)^d`, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        let per = (self.modulus as usize).checked_mul(1usize.checked_shl(self.modulus)?)?;
        (0..self.dim).try_fold(1usize, |acc, _| acc.checked_mul(per))
    }

    fn per_factor(&self) -> usize {
        self.modulus as usize * (1usize << self.modulus)
    }

    /// Reduce lamp positions and shifts mod `N`.
    pub fn quotient_map(&self, g: &GroupElement) -> GroupElement {
        self.group().canonical(g)
    }

    /// Mixed-radix index: per factor `shift * 2^N + lamp mask`.
    pub fn index(&self, g: &GroupElement) -> usize {
        let g = self.quotient_map(g);
        let mut idx = 0;
        for f in g.factors() {
            let mask: usize = f.lamps().iter().map(|&p| 1usize << p).sum();
            idx = idx * self.per_factor() + (f.shift() as usize) * (1 << self.modulus) + mask;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let per = self.per_factor();
        let mut factors = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            let local = idx % per;
            idx /= per;
            let mask = local % (1 << self.modulus);
            let shift = (local >> self.modulus) as i64;
            let lamps = (0..self.modulus as i64).filter(|&p| mask >> p & 1 == 1);
            factors.push(Factor::new(lamps, shift));
        }
        factors.reverse();
        GroupElement::from_factors(factors)
    }
}

pub fn build_quotient(modulus: u32, dim: usize) -> Result<FiniteQuotient, SpectralError> {
    if modulus < 2 || dim == 0 {
        return Err(SpectralError::InvalidParameter("need N >= 2 and d >= 1".into()));
    }
    if modulus > 24 {
        return Err(SpectralError::InvalidParameter("N above 24 is not representable".into()));
    }
    Ok(FiniteQuotient { modulus, dim })
}

/// Sparse rational matrix, rows as sorted column maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionMatrix {
    pub size: usize,
    pub rows: Vec<BTreeMap<usize, Rational>>,
}

impl ConvolutionMatrix {
    pub fn entry(&self, x: usize, y: usize) -> Rational {
        self.rows[x].get(&y).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(x, row)| row.iter().all(|(&y, c)| self.rows[y].get(&x) == Some(c)))
    }

    pub fn identity(size: usize) -> Self {
        ConvolutionMatrix {
            size,
            rows: (0..size).map(|i| BTreeMap::from([(i, Rational::one())])).collect(),
        }
    }

    pub fn zero(size: usize) -> Self {
        ConvolutionMatrix { size, rows: vec![BTreeMap::new(); size] }
    }
}

/// `M[x][y] = sum of c_g over g with x g = y`.
pub fn convolution_matrix(q: &FiniteQuotient, t: &RingElement, max_size: usize) -> Result<ConvolutionMatrix, SpectralError> {
    if t.group().dim != q.dim {
        return Err(SpectralError::InvalidParameter(format!(
            "element lives over d = {}, quotient has d = {}",
            t.group().dim,
            q.dim
        )));
    }
    let size = q.order().filter(|&s| s <= max_size).ok_or(SpectralError::TooLarge {
        what: "convolution matrix",
        limit: max_size,
    })?;
    let group = q.group();
    let terms: Vec<(GroupElement, Rational)> = t.terms().map(|(g, c)| (q.quotient_map(g), c.clone())).collect();
    let rows = (0..size)
        .into_par_iter()
        .map(|x| {
            let gx = q.element(x);
            let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
            for (g, c) in &terms {
                let y = q.index(&group.mul(&gx, g));
                *row.entry(y).or_insert_with(Rational::zero) += c;
            }
            row.retain(|_, c| !c.is_zero());
            row
        })
        .collect();
    Ok(ConvolutionMatrix { size, rows })
}

fn primitive(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Rank by fraction-free elimination on integer rows kept primitive.
pub fn exact_rank(m: &ConvolutionMatrix) -> usize {
    // pivot column -> reduced row whose leading column it is
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for row in &m.rows {
        let lcm = row.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut r: BTreeMap<usize, BigInt> = row
            .iter()
            .map(|(&j, c)| (j, (c * Rational::from_integer(lcm.clone())).to_integer()))
            .collect();
        while let Some((&lead, a)) = r.iter().next() {
            let Some(p) = pivots.get(&lead) else { break };
            let a = a.clone();
            let b = p[&lead].clone();
            // r <- b r - a p, which clears column `lead`
            let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&j, v) in &r {
                out.insert(j, v * &b);
            }
            for (&j, v) in p {
                let e = out.entry(j).or_insert_with(BigInt::zero);
                *e -= v * &a;
            }
            out.retain(|_, v| !v.is_zero());
            primitive(&mut out);
            r = out;
        }
        if let Some((&lead, _)) = r.iter().next() {
            if r[&lead].is_negative() {
                for v in r.values_mut() {
                    *v = -&*v;
                }
            }
            pivots.insert(lead, r);
        }
    }
    pivots.len()
}

/// `(size - rank) / size`.
pub fn kernel_dim_exact(m: &ConvolutionMatrix) -> Rational {
    if m.size == 0 {
        return Rational::zero();
    }
    Rational::new((m.size - exact_rank(m)).into(), m.size.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_word, GeneratorAlphabet};
    use crate::duality::{cylinder_to_ring, BitCylinder};
    use crate::rational::{int, rat};

    fn word(w: &str) -> RingElement {
        parse_word(w, &GeneratorAlphabet::lamplighter(1)).unwrap()
    }

    #[test]
    fn orders_and_indexing() {
        let q = build_quotient(3, 1).unwrap();
        assert_eq!(q.order(), Some(24));
        for i in 0..24 {
            assert_eq!(q.index(&q.element(i)), i);
        }
        let q2 = build_quotient(2, 2).unwrap();
        assert_eq!(q2.order(), Some(64));
        for i in 0..64 {
            assert_eq!(q2.index(&q2.element(i)), i);
        }
    }

    #[test]
    fn t_to_the_n_is_trivial() {
        let q = build_quotient(5, 1).unwrap();
        let t5 = GroupElement::shift_by(1, 5, 1);
        assert!(q.quotient_map(&t5).is_identity());
    }

    #[test]
    fn simple_matrices() {
        let q = build_quotient(2, 1).unwrap();
        assert_eq!(convolution_matrix(&q, &word("1"), 100).unwrap(), ConvolutionMatrix::identity(8));
        let m = convolution_matrix(&q, &word("t1"), 100).unwrap();
        assert!(m.rows.iter().all(|r| r.len() == 1 && r.values().all(|c| *c == int(1))));
        assert!(convolution_matrix(&q, &word("t1 + T1 + a1"), 100).unwrap().is_symmetric());
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_dim_exact(&ConvolutionMatrix::zero(5)), int(1));
        let q = build_quotient(4, 1).unwrap();
        let m = convolution_matrix(&q, &word("1 - t1"), 1000).unwrap();
        assert_eq!(kernel_dim_exact(&m), rat(1, 4));
        let chi = cylinder_to_ring(&BitCylinder::new([(0, 0)]));
        let m = convolution_matrix(&q, &chi, 1000).unwrap();
        assert_eq!(kernel_dim_exact(&m), rat(1, 2));
    }
}
