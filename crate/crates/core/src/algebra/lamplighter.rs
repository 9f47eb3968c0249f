//! Elements of `(Z/2 wr Z)^d` and of the finite quotients `(Z/2 wr Z/N)^d`.
//!
//! A factor is a pair `(lamps, shift)` where `lamps` is a finite set of lit
//! positions. The walker generator `t` is `({}, 1)` and the lamp generator
//! `a` is `({0}, 0)`. Multiplication is
//! `(f, s) * (g, u) = (f xor (g + s), s + u)`.

use std::cmp::Ordering;
use std::fmt;

use super::group::Group;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Factor {
    /// Lit positions, strictly increasing.
    lamps: Vec<i64>,
    shift: i64,
}

impl Factor {
    pub fn identity() -> Self {
        Factor::default()
    }

    /// Builds a factor from arbitrary lamp positions; repeated positions cancel.
    pub fn new(lamps: impl IntoIterator<Item = i64>, shift: i64) -> Self {
        let mut v: Vec<i64> = lamps.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<i64> = Vec::with_capacity(v.len());
        for p in v {
            if out.last() == Some(&p) {
                out.pop();
            } else {
                out.push(p);
            }
        }
        Factor { lamps: out, shift }
    }

    pub fn lamps(&self) -> &[i64] {
        &self.lamps
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.lamps.is_empty() && self.shift == 0
    }

    pub fn mul(&self, other: &Factor) -> Factor {
        let moved = other.lamps.iter().map(|p| p + self.shift);
        Factor {
            lamps: sym_diff_sorted(&self.lamps, moved),
            shift: self.shift + other.shift,
        }
    }

    pub fn inv(&self) -> Factor {
        Factor {
            lamps: self.lamps.iter().map(|p| p - self.shift).collect(),
            shift: -self.shift,
        }
    }

    /// Product in `Z/2 wr Z/N`: positions and shift are kept in `0..N`.
    pub fn mul_mod(&self, other: &Factor, modulus: i64) -> Factor {
        let moved = other.lamps.iter().map(|p| (p + self.shift).rem_euclid(modulus));
        let mut lamps: Vec<i64> = moved.collect();
        lamps.sort_unstable();
        Factor {
            lamps: sym_diff_sorted(&self.lamps, lamps.into_iter()),
            shift: (self.shift + other.shift).rem_euclid(modulus),
        }
    }

    pub fn reduce_mod(&self, modulus: i64) -> Factor {
        Factor::new(
            self.lamps.iter().map(|p| p.rem_euclid(modulus)),
            self.shift.rem_euclid(modulus),
        )
    }
}

/// Symmetric difference of a sorted slice with a sorted iterator.
fn sym_diff_sorted(a: &[i64], b: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut out = Vec::with_capacity(a.len());
    let mut b = b.peekable();
    let mut i = 0;
    loop {
        match (a.get(i), b.peek()) {
            (Some(&x), Some(&y)) => match x.cmp(&y) {
                Ordering::Less => {
                    out.push(x);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(y);
                    b.next();
                }
                Ordering::Equal => {
                    i += 1;
                    b.next();
                }
            },
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                out.push(y);
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Canonical element of `(Z/2 wr Z)^d`; equality of canonical forms solves
/// the word problem.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    factors: Vec<Factor>,
}

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        GroupElement {
            factors: vec![Factor::identity(); dim],
        }
    }

    pub fn from_factors(factors: Vec<Factor>) -> Self {
        assert!(!factors.is_empty(), "group elements need at least one factor");
        GroupElement { factors }
    }

    /// The walker generator `t_i` (factors are numbered from 1).
    pub fn t(index: usize, dim: usize) -> Self {
        Self::single(index, dim, Factor::new([], 1))
    }

    /// The lamp generator `a_i`.
    pub fn a(index: usize, dim: usize) -> Self {
        Self::single(index, dim, Factor::new([0], 0))
    }

    /// `a_i` conjugated to position `pos`, i.e. `t^pos a t^-pos`.
    pub fn lamp(index: usize, pos: i64, dim: usize) -> Self {
        Self::single(index, dim, Factor::new([pos], 0))
    }

    pub fn shift_by(index: usize, amount: i64, dim: usize) -> Self {
        Self::single(index, dim, Factor::new([], amount))
    }

    fn single(index: usize, dim: usize, factor: Factor) -> Self {
        assert!(index >= 1 && index <= dim, "factor index {index} out of 1..={dim}");
        let mut g = Self::identity(dim);
        g.factors[index - 1] = factor;
        g
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(Factor::is_identity)
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement, AlgebraError> {
        if self.dim() != other.dim() {
            return Err(AlgebraError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            factors: self
                .factors
                .iter()
                .zip(&other.factors)
                .map(|(x, y)| x.mul(y))
                .collect(),
        }
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement {
            factors: self.factors.iter().map(Factor::inv).collect(),
        }
    }

    /// Largest `|position|` or `|shift|` appearing in any factor.
    pub fn extent(&self) -> i64 {
        self.factors
            .iter()
            .flat_map(|f| f.lamps.iter().copied().chain([f.shift]))
            .map(i64::abs)
            .max()
            .unwrap_or(0)
    }
}

/// Shift vector first, then the lamp lists; this is the serialization order.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let shifts = |g: &GroupElement| g.factors.iter().map(|f| f.shift).collect::<Vec<_>>();
        shifts(self)
            .cmp(&shifts(other))
            .then_with(|| {
                self.factors
                    .iter()
                    .map(|f| &f.lamps)
                    .cmp(other.factors.iter().map(|f| &f.lamps))
            })
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " |")?;
            }
            let lamps: Vec<String> = factor.lamps.iter().map(i64::to_string).collect();
            write!(f, " f{}:{{{}}} s{}:{}", i + 1, lamps.join(","), i + 1, factor.shift)?;
        }
        write!(f, " ]")
    }
}

/// Group descriptor: `(Z/2 wr Z)^d`, or the quotient `(Z/2 wr Z/N)^d` when a
/// modulus is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lamplighter {
    pub dim: usize,
    pub modulus: Option<u32>,
}

impl Lamplighter {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1);
        Lamplighter { dim, modulus: None }
    }

    pub fn quotient(dim: usize, modulus: u32) -> Self {
        assert!(dim >= 1 && modulus >= 1);
        Lamplighter {
            dim,
            modulus: Some(modulus),
        }
    }

    /// Brings an element of the infinite group into canonical form for this
    /// descriptor.
    pub fn canonical(&self, g: &GroupElement) -> GroupElement {
        match self.modulus {
            None => g.clone(),
            Some(n) => GroupElement {
                factors: g.factors.iter().map(|f| f.reduce_mod(n as i64)).collect(),
            },
        }
    }
}

impl Group for Lamplighter {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        GroupElement::identity(self.dim)
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        debug_assert_eq!(a.dim(), self.dim);
        debug_assert_eq!(b.dim(), self.dim);
        match self.modulus {
            None => a.mul_unchecked(b),
            Some(n) => GroupElement {
                factors: a
                    .factors
                    .iter()
                    .zip(&b.factors)
                    .map(|(x, y)| x.mul_mod(y, n as i64))
                    .collect(),
            },
        }
    }

    fn inv(&self, a: &GroupElement) -> GroupElement {
        self.canonical(&a.inv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(lamps: &[i64], shift: i64) -> GroupElement {
        GroupElement::from_factors(vec![Factor::new(lamps.iter().copied(), shift)])
    }

    #[test]
    fn generator_products() {
        let a = GroupElement::a(1, 1);
        let t = GroupElement::t(1, 1);
        assert!(a.try_mul(&a).unwrap().is_identity());
        assert_eq!(t.try_mul(&a).unwrap(), el(&[1], 1));
        let conj = t.inv().try_mul(&a).unwrap().try_mul(&t).unwrap();
        assert_eq!(conj, el(&[-1], 0));
    }

    #[test]
    fn inverses() {
        assert_eq!(GroupElement::a(1, 1).inv(), GroupElement::a(1, 1));
        assert_eq!(GroupElement::t(1, 1).inv(), el(&[], -1));
        let g = el(&[0, 2], 1);
        assert_eq!(g.inv(), el(&[-1, 1], -1));
        assert!(g.try_mul(&g.inv()).unwrap().is_identity());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = GroupElement::t(1, 1).try_mul(&GroupElement::t(1, 2));
        assert!(matches!(err, Err(AlgebraError::DimensionMismatch(1, 2))));
    }

    #[test]
    fn repeated_lamps_cancel() {
        assert_eq!(Factor::new([3, 1, 3], 0).lamps(), &[1]);
    }

    #[test]
    fn quotient_reduces_shift() {
        let q = Lamplighter::quotient(1, 3);
        let t = q.canonical(&GroupElement::t(1, 1));
        let t3 = q.mul(&q.mul(&t, &t), &t);
        assert!(t3.is_identity());
        assert_eq!(q.inv(&t), el(&[], 2));
    }

    #[test]
    fn ordering_is_shift_first() {
        let x = el(&[5], 0);
        let y = el(&[], 1);
        assert!(x < y);
        assert!(el(&[1], 0) < el(&[2], 0));
    }
}
