//! Exact moments `tr_vN((1 - P)^n)`.
//!
//! `Q = 1 - P` is walked on the Cayley graph of its support: group elements
//! are interned once, coefficients are integer numerators over `C^k`, and for
//! self-adjoint `Q` the trace of `Q^(2k)` is the squared norm of `Q^k` while
//! `Q^(2k+1)` pairs `Q^k` with `Q^(k+1)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{Group, GroupElement, Lamplighter, RingElement};
use crate::rational::Rational;

use super::SpectralError;

/// Default cap on interned group elements (and on certified exponents).
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Coefficient updates per unit of budget allowed when the exponent exceeds
/// the budget and only the early exit can give an answer.
pub const WORK_PER_BUDGET: u64 = 20;

struct Walk {
    group: Lamplighter,
    step: Vec<(GroupElement, BigInt)>,
    /// `±1` where the step coefficient is a unit, else 0.
    unit: Vec<i8>,
    elems: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    /// `out[h] = [(h q, numerator of Q_q)]`, filled on demand.
    out: Vec<Option<Vec<(u32, usize)>>>,
    budget: u64,
}

impl Walk {
    fn intern(&mut self, g: GroupElement) -> Result<u32, SpectralError> {
        if let Some(&i) = self.index.get(&g) {
            return Ok(i);
        }
        if self.elems.len() as u64 >= self.budget {
            return Err(SpectralError::BudgetExceeded { budget: self.budget });
        }
        let i = self.elems.len() as u32;
        self.index.insert(g.clone(), i);
        self.elems.push(g);
        self.out.push(None);
        Ok(i)
    }

    fn ensure_out(&mut self, h: u32) -> Result<(), SpectralError> {
        if self.out[h as usize].is_some() {
            return Ok(());
        }
        let g = self.elems[h as usize].clone();
        let mut list = Vec::with_capacity(self.step.len());
        for qi in 0..self.step.len() {
            let next = self.group.mul(&g, &self.step[qi].0);
            list.push((self.intern(next)?, qi));
        }
        self.out[h as usize] = Some(list);
        Ok(())
    }
}

/// Powers `Q^k` of `Q = 1 - P` as integer numerators over `C^k`.
struct PowerWalk {
    walk: Walk,
    denom: BigInt,
    cur: Vec<(u32, BigInt)>,
    /// `C^k`
    scale: BigInt,
    /// `Q^(k-1)` and `C^(k-1)`
    prev: Vec<(u32, BigInt)>,
    prev_scale: BigInt,
    k: u64,
    work: u64,
    max_work: u64,
    /// `Some(lambda)` once `Q^(k+1) = lambda Q^k` has been observed.
    ratio: Option<Rational>,
}

impl PowerWalk {
    fn new(p: &RingElement, budget: u64, max_work: u64) -> Result<Self, SpectralError> {
        if !p.is_self_adjoint() {
            return Err(SpectralError::NotSelfAdjoint);
        }
        let group = p.group();
        let q = RingElement::one(group).sub(p).expect("same group");
        let denom = q.elem().denominator_lcm();
        let step: Vec<(GroupElement, BigInt)> = q
            .terms()
            .map(|(g, c)| (g.clone(), (c * Rational::from_integer(denom.clone())).to_integer()))
            .collect();
        let unit = step
            .iter()
            .map(|(_, c)| if c.is_one() { 1 } else if (-c).is_one() { -1 } else { 0 })
            .collect();
        let mut walk = Walk { group, step, unit, elems: Vec::new(), index: HashMap::new(), out: Vec::new(), budget };
        let e = walk.intern(group.identity())?;
        Ok(PowerWalk {
            walk,
            denom,
            cur: vec![(e, BigInt::one())],
            scale: BigInt::one(),
            prev: Vec::new(),
            prev_scale: BigInt::one(),
            k: 0,
            work: 0,
            max_work,
            ratio: None,
        })
    }

    /// Move from `Q^k` to `Q^(k+1)`; the previous power is kept for [`Self::traces`].
    fn advance(&mut self) -> Result<(), SpectralError> {
        if self.k >= self.walk.budget {
            return Err(SpectralError::BudgetExceeded { budget: self.walk.budget });
        }
        let walk = &mut self.walk;
        let mut cand: Vec<u32> = Vec::new();
        for &(h, _) in &self.cur {
            walk.ensure_out(h)?;
            cand.extend(walk.out[h as usize].as_ref().unwrap().iter().map(|&(j, _)| j));
        }
        cand.sort_unstable();
        cand.dedup();
        self.work += cand.len() as u64;
        if self.work > self.max_work {
            return Err(SpectralError::BudgetExceeded { budget: walk.budget });
        }
        for &h in &cand {
            walk.ensure_out(h)?;
        }
        let mut dense: Vec<Option<&BigInt>> = vec![None; walk.elems.len()];
        for (h, v) in &self.cur {
            dense[*h as usize] = Some(v);
        }
        let walk_ref = &*walk;
        let next: Vec<(u32, BigInt)> = cand
            .par_iter()
            .map(|&h| {
                let mut acc = BigInt::zero();
                for &(j, qi) in walk_ref.out[h as usize].as_ref().unwrap() {
                    if let Some(v) = dense.get(j as usize).copied().flatten() {
                        // unit coefficients are common; skip the temporary
                        match walk_ref.unit[qi] {
                            1 => acc += v,
                            -1 => acc -= v,
                            _ => acc += v * &walk_ref.step[qi].1,
                        }
                    }
                }
                (h, acc)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.ratio = proportional(&self.cur, &next).map(|r| r / Rational::from_integer(self.denom.clone()));
        self.prev = std::mem::replace(&mut self.cur, next);
        let next_scale = &self.scale * &self.denom;
        self.prev_scale = std::mem::replace(&mut self.scale, next_scale);
        self.k += 1;
        Ok(())
    }

    /// `(tr Q^(2k-1), tr Q^(2k))` for the current `k >= 1`, as `<Q^(k-1), Q^k>`
    /// and `<Q^k, Q^k>`.
    fn traces(&self) -> (Rational, Rational) {
        let mut dense: HashMap<u32, &BigInt> = HashMap::with_capacity(self.prev.len());
        for (h, v) in &self.prev {
            dense.insert(*h, v);
        }
        let odd: BigInt = self.cur.par_iter().map(|(h, v)| dense.get(h).map_or_else(BigInt::zero, |c| *c * v)).sum();
        let even: BigInt = self.cur.par_iter().map(|(_, v)| v * v).sum();
        (Rational::new(odd, &self.prev_scale * &self.scale), Rational::new(even, &self.scale * &self.scale))
    }
}

/// `b / a` when `b = (b/a) a` entrywise on equal supports.
fn proportional(a: &[(u32, BigInt)], b: &[(u32, BigInt)]) -> Option<Rational> {
    if b.is_empty() {
        return Some(Rational::zero());
    }
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.0 != y.0) {
        return None;
    }
    let (a0, b0) = (&a[0].1, &b[0].1);
    a.iter().zip(b).all(|(x, y)| &x.1 * b0 == &y.1 * a0).then(|| Rational::new(b0.clone(), a0.clone()))
}

/// `tr_vN((1 - P)^n)` for `n = 0..=max_n`. `P` must be self-adjoint.
pub fn moments(p: &RingElement, max_n: u64, budget: u64) -> Result<Vec<Rational>, SpectralError> {
    let mut walk = PowerWalk::new(p, budget, u64::MAX)?;
    let mut out = vec![Rational::one()];
    while (out.len() as u64) <= max_n {
        walk.advance()?;
        let (odd, even) = walk.traces();
        out.push(odd);
        out.push(even);
    }
    out.truncate(max_n as usize + 1);
    Ok(out)
}

/// A single moment. Stops early once `Q^(k+1)` is a multiple of `Q^k`, which
/// makes idempotent and nilpotent inputs cheap at any exponent; otherwise
/// costs `n/2` steps, each bounded by `budget`.
pub fn moment(p: &RingElement, n: u64, budget: u64) -> Result<Rational, SpectralError> {
    moment_with_work(p, n, budget, u64::MAX)
}

/// [`moment`] that also gives up after `max_work` coefficient updates, for
/// exponents too large to reach without the early exit.
pub fn moment_with_work(p: &RingElement, n: u64, budget: u64, max_work: u64) -> Result<Rational, SpectralError> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut walk = PowerWalk::new(p, budget, max_work)?;
    loop {
        walk.advance()?;
        let k = walk.k;
        if n == 2 * k - 1 {
            return Ok(walk.traces().0);
        }
        if n == 2 * k {
            return Ok(walk.traces().1);
        }
        if let Some(lambda) = walk.ratio.clone() {
            // Q^j = lambda^(j-k+1) Q^(k-1) for j >= k-1, so tr Q^n = lambda^(n-2k) tr Q^(2k)
            let e = n - 2 * k;
            return Ok(walk.traces().1 * rational_pow(&lambda, e));
        }
    }
}

fn rational_pow(x: &Rational, e: u64) -> Rational {
    if x.is_zero() {
        return if e == 0 { Rational::one() } else { Rational::zero() };
    }
    if x.is_one() {
        return Rational::one();
    }
    let e32 = u32::try_from(e).expect("exponent fits in u32");
    Rational::new(x.numer().pow(e32), x.denom().pow(e32))
}

/// Reference path through plain ring multiplication; only for small `n`.
pub fn moment_by_expansion(p: &RingElement, n: u32) -> Rational {
    let q = RingElement::one(p.group()).sub(p).expect("same group");
    q.pow(n).trace_vn()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{normalize_positive, parse_word, GeneratorAlphabet};
    use crate::rational::{int, rat};

    fn normalized(word: &str) -> RingElement {
        let t = parse_word(word, &GeneratorAlphabet::lamplighter(1)).unwrap();
        normalize_positive(&t).unwrap().0
    }

    #[test]
    fn idempotent_moments() {
        let p = normalized("1 - a1");
        let ms = moments(&p, 10, 1000).unwrap();
        assert_eq!(ms[0], int(1));
        assert!(ms[1..].iter().all(|m| *m == rat(1, 2)));
    }

    #[test]
    fn random_walk_moments() {
        let p = normalized("1 - t1");
        let ms = moments(&p, 8, 1000).unwrap();
        assert_eq!(ms[2], rat(3, 8));
        for n in 0..=8 {
            assert_eq!(ms[n], moment_by_expansion(&p, n as u32));
        }
    }

    #[test]
    fn early_exit_on_idempotent() {
        let p = normalized("1 - a1");
        assert_eq!(moment(&p, 65_659_970, 10).unwrap(), rat(1, 2));
        let q = normalized("1 - t1");
        for n in 0..=9 {
            assert_eq!(moment(&q, n, 1000).unwrap(), moment_by_expansion(&q, n as u32));
        }
    }

    #[test]
    fn zero_and_budget() {
        let zero = RingElement::zero(Lamplighter::new(1));
        assert_eq!(moment(&zero, 5, 10).unwrap(), int(1));
        let p = normalized("1 - t1");
        assert!(matches!(moments(&p, 100, 10), Err(SpectralError::BudgetExceeded { .. })));
    }

    #[test]
    fn two_factor_mixed_element() {
        let t = parse_word("1 + a1 t2 - t1 a2 T1", &GeneratorAlphabet::lamplighter(2)).unwrap();
        let p = normalize_positive(&t).unwrap().0;
        let ms = moments(&p, 6, 10_000).unwrap();
        for n in 0..=6 {
            assert_eq!(ms[n], moment_by_expansion(&p, n as u32));
        }
    }
}
