//! Deciding whether `T` is an l2-zero-divisor from one moment.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{normalize_positive, AlgebraError, RingElement};
use crate::rational::{fmt_rational, Rational};

use super::bounds::required_exponent;
use super::moment::{moment_with_work, WORK_PER_BUDGET};
use super::SpectralError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    ZeroDivisor,
    NotZeroDivisor,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// True only when the moment was taken at the proven exponent.
    pub certified: bool,
    pub gamma: Option<Rational>,
    /// Exponent used (or required, when inconclusive).
    pub n: Exponent,
    pub c: BigInt,
    pub k: u64,
}

/// The exponent, or `floor(e^x) + 1` left symbolic when too large to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Exact(BigInt),
    ExpOf(BigInt),
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Exact(n) => write!(f, "{n}"),
            Exponent::ExpOf(x) => write!(f, "floor(e^{x})+1"),
        }
    }
}

#[derive(Serialize)]
struct VerdictJson {
    verdict: Outcome,
    certified: bool,
    gamma: Option<String>,
    n: String,
    #[serde(rename = "C")]
    c: String,
    k: u64,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        let v = VerdictJson {
            verdict: self.outcome,
            certified: self.certified,
            gamma: self.gamma.as_ref().map(fmt_rational),
            n: self.n.to_string(),
            c: self.c.to_string(),
            k: self.k,
        };
        serde_json::to_string(&v).expect("plain data")
    }
}

/// Normalize `T`, take the moment `gamma` at the proven exponent (or at
/// `override_n`, uncertified) and compare with `1 / (3k)`.
///
/// `budget` caps both the number of walk steps (half the exponent, unless the
/// powers stabilize earlier) and the number of interned group elements;
/// exceeding either gives `Inconclusive`.
pub fn decide_l2_zero_divisor(
    t: &RingElement,
    k: u64,
    override_n: Option<u64>,
    budget: u64,
) -> Result<Verdict, SpectralError> {
    if k == 0 {
        return Err(SpectralError::InvalidParameter("k must be at least 1".into()));
    }
    let (p, c) = match normalize_positive(t) {
        Ok(x) => x,
        Err(AlgebraError::ZeroInput) => {
            return Ok(Verdict {
                outcome: Outcome::ZeroDivisor,
                certified: true,
                gamma: None,
                n: Exponent::Exact(BigInt::from(0)),
                c: BigInt::from(1),
                k,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let (n, certified) = match override_n {
        Some(n) => (BigInt::from(n), false),
        None => {
            let c_small = c.to_u64().filter(|&c| c.saturating_mul(9 * k) <= MAX_EXACT_EXPONENT);
            match c_small {
                Some(cs) => (required_exponent(cs, k), true),
                None => {
                    let x = &c * BigInt::from(9 * k);
                    return Ok(Verdict { outcome: Outcome::Inconclusive, certified: false, gamma: None, n: Exponent::ExpOf(x), c, k });
                }
            }
        }
    };
    let inconclusive = |n: BigInt, c: BigInt| Verdict { outcome: Outcome::Inconclusive, certified: false, gamma: None, n: Exponent::Exact(n), c, k };
    let n_small = match n.to_u64() {
        Some(v) => v,
        None => return Ok(inconclusive(n, c)),
    };
    // an exponent beyond the budget is only reachable through the early exit
    let max_work = if n_small > budget { budget.saturating_mul(WORK_PER_BUDGET) } else { u64::MAX };
    let gamma = match moment_with_work(&p, n_small, budget, max_work) {
        Ok(g) => g,
        Err(SpectralError::BudgetExceeded { .. }) => return Ok(inconclusive(n, c)),
        Err(e) => return Err(e),
    };
    let threshold = Rational::new(1.into(), BigInt::from(3 * k));
    let outcome = if gamma > threshold { Outcome::ZeroDivisor } else { Outcome::NotZeroDivisor };
    Ok(Verdict { outcome, certified, gamma: Some(gamma), n: Exponent::Exact(n), c, k })
}

/// Largest `9Ck` for which the exponent is evaluated exactly.
pub const MAX_EXACT_EXPONENT: u64 = 10_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_word, GeneratorAlphabet, Lamplighter};
    use crate::rational::rat;

    fn word(w: &str) -> RingElement {
        parse_word(w, &GeneratorAlphabet::lamplighter(1)).unwrap()
    }

    #[test]
    fn torsion_element_is_zero_divisor() {
        let v = decide_l2_zero_divisor(&word("1 - a1"), 2, Some(8), 100_000).unwrap();
        assert_eq!(v.outcome, Outcome::ZeroDivisor);
        assert!(!v.certified);
        assert_eq!(v.gamma, Some(rat(1, 2)));
    }

    #[test]
    fn zero_is_certified_zero_divisor() {
        let v = decide_l2_zero_divisor(&RingElement::zero(Lamplighter::new(1)), 1, None, 10).unwrap();
        assert_eq!(v.outcome, Outcome::ZeroDivisor);
        assert!(v.certified);
    }

    #[test]
    fn over_budget_is_inconclusive() {
        let v = decide_l2_zero_divisor(&word("1 - t1"), 1, None, 1000).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);
        assert!(!v.certified);
    }

    #[test]
    fn certified_idempotent() {
        // (1-a)/2: the moment is 1/2 at every n, so the certified run is cheap
        let v = decide_l2_zero_divisor(&word("1 - a1"), 1, None, 100_000).unwrap();
        assert_eq!(v.outcome, Outcome::ZeroDivisor);
        assert!(v.certified);
        assert_eq!(v.n, Exponent::Exact(BigInt::from(65_659_970u64)));
        assert!(v.to_json().contains("\"certified\":true"));
    }
}
