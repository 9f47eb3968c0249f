//! The embedding chain `(Z/2^m wr Z)^k x H -> (Z/2 wr Z)^(k+1)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Factor, GroupElement, GroupRingElem, Lamplighter, RingElement, WideFactor};
use crate::rational::Rational;

use super::finite_group::FiniteGroupTable;
use super::regular::embed_finite_group_ring;
use super::DualityError;

/// Lamp `(k, bit b)` goes to position `k*m + b`, the shift is multiplied by `m`.
pub fn block_embed(m: u32, g: &WideFactor) -> Factor {
    assert!(m >= 1);
    let mut lamps = Vec::new();
    for &(p, value) in g.lamps() {
        for b in 0..m {
            if value >> b & 1 == 1 {
                lamps.push(p * m as i64 + b as i64);
            }
        }
    }
    Factor::new(lamps, g.shift() * m as i64)
}

/// `(g, h) -> g x L(h)` with `L(h)` the embedded regular representation in the
/// last factor. `x` lives over `(Z/2 wr Z)^k x H`.
pub fn tensor_embed(
    x: &GroupRingElem<(GroupElement, usize)>,
    k: usize,
    h: &FiniteGroupTable,
) -> Result<RingElement, DualityError> {
    let target = Lamplighter::new(k + 1);
    let mut cache: HashMap<usize, RingElement> = HashMap::new();
    let mut terms = Vec::new();
    for ((g, hi), c) in x.terms() {
        if g.dim() != k {
            return Err(DualityError::Dimension { expected: k, found: g.dim() });
        }
        if !cache.contains_key(hi) {
            let image = embed_finite_group_ring(h, &GroupRingElem::monomial(*hi, Rational::one()))?;
            cache.insert(*hi, image);
        }
        for (u, d) in cache[hi].terms() {
            let mut factors = g.factors().to_vec();
            factors.push(u.factors()[0].clone());
            terms.push((GroupElement::from_factors(factors), c * d));
        }
    }
    Ok(RingElement::from_terms(target, terms))
}

/// `numer * 2^-exp`, kept symbolic because `exp` can be astronomically large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceScale {
    pub numer: BigInt,
    pub exp: BigInt,
}

impl TraceScale {
    pub fn one() -> Self {
        TraceScale { numer: BigInt::one(), exp: BigInt::zero() }
    }

    pub fn compose(&self, other: &TraceScale) -> TraceScale {
        TraceScale {
            numer: &self.numer * &other.numer,
            exp: &self.exp + &other.exp,
        }
    }

    /// Exact value when the exponent is small enough to materialize.
    pub fn to_rational(&self) -> Option<Rational> {
        let e: u32 = u32::try_from(&self.exp).ok().filter(|&e| e <= 1 << 16)?;
        Some(Rational::new(self.numer.clone(), BigInt::one() << e))
    }
}

impl fmt::Display for TraceScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^-{}", self.numer, self.exp)
    }
}

impl std::str::FromStr for TraceScale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (n, e) = s.split_once("*2^-").ok_or_else(|| format!("bad trace scale `{s}`"))?;
        Ok(TraceScale {
            numer: n.parse().map_err(|_| format!("bad trace scale `{s}`"))?,
            exp: e.parse().map_err(|_| format!("bad trace scale `{s}`"))?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    /// `M_n(Q) -> Q[Z/2 wr Z]`.
    MatrixUnit { n: usize },
    /// `Z/2^m wr Z -> Z/2 wr Z` on factor `factor`.
    BlockLamp { m: u32, factor: usize },
    /// `Q[H] -> M_h(Q) -> Q[Z/2 wr Z]`.
    RegularRep { order: BigInt },
    /// `Q[(Z/2 wr Z)^k x H] -> Q[(Z/2 wr Z)^(k+1)]`.
    Tensor { order: BigInt, factor: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingDescriptor {
    pub kind: EmbeddingKind,
    pub trace_scale: TraceScale,
}

impl EmbeddingDescriptor {
    pub fn matrix_unit(n: usize) -> Self {
        EmbeddingDescriptor {
            kind: EmbeddingKind::MatrixUnit { n },
            trace_scale: TraceScale { numer: BigInt::one(), exp: BigInt::from(n + 2) },
        }
    }

    pub fn block_lamp(m: u32, factor: usize) -> Self {
        EmbeddingDescriptor { kind: EmbeddingKind::BlockLamp { m, factor }, trace_scale: TraceScale::one() }
    }

    fn regular_scale(order: &BigInt) -> TraceScale {
        TraceScale { numer: order.clone(), exp: order + 2 }
    }

    pub fn regular_rep(order: BigInt) -> Self {
        EmbeddingDescriptor { trace_scale: Self::regular_scale(&order), kind: EmbeddingKind::RegularRep { order } }
    }

    pub fn tensor(order: BigInt, factor: usize) -> Self {
        EmbeddingDescriptor { trace_scale: Self::regular_scale(&order), kind: EmbeddingKind::Tensor { order, factor } }
    }
}

impl fmt::Display for EmbeddingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            EmbeddingKind::MatrixUnit { n } => write!(f, "matrix-unit n={n}")?,
            EmbeddingKind::BlockLamp { m, factor } => write!(f, "block-lamp m={m} factor={factor}")?,
            EmbeddingKind::RegularRep { order } => write!(f, "regular-rep h={order}")?,
            EmbeddingKind::Tensor { order, factor } => write!(f, "tensor h={order} factor={factor}")?,
        }
        write!(f, " scale={}", self.trace_scale)
    }
}

impl std::str::FromStr for EmbeddingDescriptor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or("empty embedding descriptor")?;
        let mut params: HashMap<&str, &str> = HashMap::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| format!("bad parameter `{w}`"))?;
            params.insert(k, v);
        }
        let get = |k: &str| params.get(k).copied().ok_or_else(|| format!("missing `{k}` in `{s}`"));
        let num = |k: &str| -> Result<BigInt, String> { get(k)?.parse().map_err(|_| format!("bad `{k}` in `{s}`")) };
        let small = |k: &str| -> Result<usize, String> { get(k)?.parse().map_err(|_| format!("bad `{k}` in `{s}`")) };
        let d = match kind {
            "matrix-unit" => EmbeddingDescriptor::matrix_unit(small("n")?),
            "block-lamp" => EmbeddingDescriptor::block_lamp(small("m")? as u32, small("factor")?),
            "regular-rep" => EmbeddingDescriptor::regular_rep(num("h")?),
            "tensor" => EmbeddingDescriptor::tensor(num("h")?, small("factor")?),
            other => return Err(format!("unknown embedding kind `{other}`")),
        };
        let declared: TraceScale = get("scale")?.parse()?;
        if declared != d.trace_scale {
            return Err(format!("declared scale {declared} does not match computed {}", d.trace_scale));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn block_embed_examples() {
        let bit2 = WideFactor::new([(0, 0b10)], 0);
        assert_eq!(block_embed(2, &bit2), Factor::new([1], 0));
        assert_eq!(block_embed(2, &WideFactor::shift_only(1)), Factor::new([], 2));
        let g = WideFactor::new([(1, 0b11)], -1);
        assert_eq!(block_embed(2, &g), Factor::new([2, 3], -2));
    }

    #[test]
    fn tensor_identity_trace() {
        let z2 = FiniteGroupTable::cyclic(2);
        let x = GroupRingElem::monomial((GroupElement::identity(3), 0usize), int(1));
        let y = tensor_embed(&x, 3, &z2).unwrap();
        assert_eq!(y.trace_vn(), rat(1, 8));
        assert_eq!(y.mul(&y).unwrap(), y);
    }

    #[test]
    fn descriptor_round_trip() {
        for d in [
            EmbeddingDescriptor::matrix_unit(3),
            EmbeddingDescriptor::block_lamp(2, 1),
            EmbeddingDescriptor::tensor(BigInt::from(24), 3),
        ] {
            let back: EmbeddingDescriptor = d.to_string().parse().unwrap();
            assert_eq!(back, d);
        }
        assert!("tensor h=24 factor=3 scale=1*2^-3".parse::<EmbeddingDescriptor>().is_err());
        assert_eq!(EmbeddingDescriptor::regular_rep(2.into()).trace_scale.to_rational(), Some(rat(1, 8)));
    }
}
