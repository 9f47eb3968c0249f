//! Lower bound for the measure of points that end in REJECT, from the fresh
//! starts with short words.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::rational::Rational;
use crate::turing::{run_readonly, Outcome, ReadOnlyTm, RoConfig};

use super::system::exponents;
use super::TdsError;

pub const MAX_TRIPLES: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectionEstimate {
    pub value: Rational,
    pub triples: usize,
    /// Triples that ran out of fuel; they are left out of `value`.
    pub skipped: usize,
}

impl RejectionEstimate {
    pub fn partial(&self) -> bool {
        self.skipped > 0
    }
}

/// All words of length `1..=max_len` over `k` letters, shortest first.
fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Sum over word triples with lengths in `1..=max_len` that `f` rejects of
/// `2^-n * prod_i delta^2 lambda^|w_i|`, where `delta` is the delimiter
/// density and `lambda = 2^-m`.
pub fn estimate_rejection_measure(f: &ReadOnlyTm, max_len: usize, fuel: u64) -> Result<RejectionEstimate, TdsError> {
    if f.heads_per_tape != [1, 1, 1] {
        return Err(TdsError::Invalid("need three tapes with one head each".into()));
    }
    let a = f.alphabet.len();
    let (m, n) = exponents(a, f.states.len());
    let ws = words(a, max_len);
    let count = ws.len().checked_pow(3).filter(|&c| c <= MAX_TRIPLES);
    let count = count.ok_or_else(|| TdsError::TooLarge(format!("more than {MAX_TRIPLES} word triples")))?;
    let two_m = BigInt::one() << m;
    let delta = Rational::new(&two_m - a, two_m.clone());
    let lambda = Rational::new(BigInt::one(), two_m);
    let weight = |len: usize| {
        let mut w = &delta * &delta;
        for _ in 0..len {
            w *= &lambda;
        }
        w
    };
    let (value, skipped) = ws
        .par_iter()
        .map(|w1| {
            let mut sum = Rational::zero();
            let mut skipped = 0;
            for w2 in &ws {
                for w3 in &ws {
                    let c = RoConfig::initial(f, vec![w1.clone(), w2.clone(), w3.clone()]);
                    match run_readonly(f, c, fuel).map(|r| r.outcome) {
                        Ok(Outcome::Reject) => sum += weight(w1.len()) * weight(w2.len()) * weight(w3.len()),
                        Ok(Outcome::Accept) => {}
                        _ => skipped += 1,
                    }
                }
            }
            (sum, skipped)
        })
        .reduce(|| (Rational::zero(), 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let value = value / Rational::from_integer(BigInt::one() << n);
    Ok(RejectionEstimate { value, triples: count, skipped })
}
