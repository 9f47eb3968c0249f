//! `F(M)`: three tapes, one head each, halting from every configuration.
//!
//! Tapes 1 and 2 run `R(M)` with accept and reject exchanged, after first
//! checking that they carry the same word. Every step of that machine goes
//! through a countdown state `D(s,t)` that advances head 3 and accepts once
//! head 3 reaches a DELIMITER.

use std::collections::BTreeMap;

use super::machine::{Move, ReadOnlyTm, RoRule, StandardTm};
use super::readonly::construct_readonly;
use super::run::RoConfig;
use super::TuringError;

use Move::{L, R, S};

/// Start state of the embedded `R(M)`.
pub const R_START: &str = "RSTART";

/// Two-tape `R''(M)`: equality precheck, then `R(M)` with exchanged
/// halting states.
pub fn construct_swapped(m: &StandardTm) -> Result<ReadOnlyTm, TuringError> {
    let r = construct_readonly(m)?;
    let mut names = vec!["INITIAL".to_string(), "ACCEPT".into(), "REJECT".into(), "EQ".into(), "EQREW".into()];
    // R's own states keep their order; its INITIAL becomes RSTART
    let mut map = vec![0usize; r.states.len()];
    for (i, n) in r.states.names.iter().enumerate() {
        map[i] = if i == r.states.accept {
            2
        } else if i == r.states.reject {
            1
        } else {
            names.push(if i == r.states.initial { R_START.to_string() } else { n.clone() });
            names.len() - 1
        };
    }
    let mut out = ReadOnlyTm::new(r.alphabet.clone(), names, vec![1, 1])?;
    for (s, syms, rule) in r.rules() {
        out.set(map[s], &syms, RoRule::new(map[rule.to], &rule.moves(2)));
    }
    let d = out.delimiter();
    let rstart = map[r.states.initial];
    let (eq, eqrew) = (3, 4);
    for s1 in 0..=d {
        for s2 in 0..=d {
            let same = s1 == s2;
            let init = match (same, s1 == d) {
                (true, false) => RoRule::new(eq, &[R, R]),
                (true, true) => RoRule::new(rstart, &[S, S]),
                _ => RoRule::new(1, &[S, S]),
            };
            out.set(0, &[s1, s2], init);
            let scan = match (same, s1 == d) {
                (true, false) => RoRule::new(eq, &[R, R]),
                (true, true) => RoRule::new(eqrew, &[L, L]),
                _ => RoRule::new(1, &[S, S]),
            };
            out.set(eq, &[s1, s2], scan);
            let rew = match (s1 == d, s2 == d) {
                (false, false) => RoRule::new(eqrew, &[L, L]),
                (true, true) => RoRule::new(rstart, &[R, R]),
                _ => RoRule::new(1, &[S, S]),
            };
            out.set(eqrew, &[s1, s2], rew);
        }
    }
    Ok(out)
}

/// Adds head 3 and the countdown states to a two-tape machine. Countdown
/// states exist only for the `(s,t)` pairs some rule actually uses.
pub fn add_countdown(r2: &ReadOnlyTm) -> Result<ReadOnlyTm, TuringError> {
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let rules: Vec<_> = r2.rules().collect();
    let mut names = r2.states.names.clone();
    for (s, _, rule) in &rules {
        pairs.entry((*s, rule.to)).or_insert_with(|| {
            names.push(format!("D.{}.{}", r2.states.names[*s], r2.states.names[rule.to]));
            names.len() - 1
        });
    }
    let mut f = ReadOnlyTm::new(r2.alphabet.clone(), names, vec![1, 1, 1])?;
    let d = f.delimiter();
    for (s, syms, rule) in &rules {
        let dstate = pairs[&(*s, rule.to)];
        for s3 in 0..=d {
            f.set(*s, &[syms[0], syms[1], s3], RoRule::new(dstate, &[rule.mv(0), rule.mv(1), S]));
        }
    }
    for (&(_, to), &dstate) in &pairs {
        for s1 in 0..=d {
            for s2 in 0..=d {
                for s3 in 0..=d {
                    let rule = if s3 == d {
                        RoRule::new(f.states.accept, &[S, S, S])
                    } else {
                        RoRule::new(to, &[S, S, R])
                    };
                    f.set(dstate, &[s1, s2, s3], rule);
                }
            }
        }
    }
    Ok(f)
}

pub fn construct_foolproof(m: &StandardTm) -> Result<ReadOnlyTm, TuringError> {
    add_countdown(&construct_swapped(m)?)
}

/// Letters strictly right of head 3 before the first DELIMITER.
pub fn letters_right_of_head3(f: &ReadOnlyTm, c: &RoConfig) -> u64 {
    let tape = &c.tapes[f.tape_of(2)];
    let mut p = c.heads[2] + 1;
    let mut n = 0;
    while p >= 0 && (p as usize) < tape.len() && tape[p as usize] != f.delimiter() {
        n += 1;
        p += 1;
    }
    n
}

/// Step bound `3 (r3 + 2)` for a configuration of `F(M)`.
pub fn halting_bound(f: &ReadOnlyTm, c: &RoConfig) -> u64 {
    3 * (letters_right_of_head3(f, c) + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turing::corpus::{m_always, m_parity};
    use crate::turing::history::encode_history;
    use crate::turing::run::{run_readonly, Outcome};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn valid_and_halting() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [m_always(), m_parity()] {
            let f = construct_foolproof(&m).unwrap();
            assert!(f.validate().is_valid(), "{}", f.validate());
            for _ in 0..2000 {
                let radix = f.radix();
                let tapes: Vec<Vec<usize>> =
                    (0..3).map(|_| (0..rng.random_range(0..12)).map(|_| rng.random_range(0..radix)).collect()).collect();
                let heads: Vec<i64> = tapes.iter().map(|t| rng.random_range(-1..=t.len() as i64)).collect();
                let c = RoConfig { tapes, heads, state: rng.random_range(0..f.states.len()), last: vec![None; 3] };
                let bound = halting_bound(&f, &c);
                let res = run_readonly(&f, c, bound).unwrap();
                assert_ne!(res.outcome, Outcome::OutOfFuel);
            }
        }
    }

    #[test]
    fn rejects_history_with_long_counter() {
        let m = m_always();
        let f = construct_foolproof(&m).unwrap();
        let h = encode_history(&m, &[0], 10).unwrap();
        let c = RoConfig::initial(&f, vec![h.clone(), h.clone(), vec![0; 200]]);
        assert_eq!(run_readonly(&f, c, 10_000).unwrap().outcome, Outcome::Reject);
        let mut other = h.clone();
        other[1] = 0;
        let c = RoConfig::initial(&f, vec![h, other, vec![0; 200]]);
        assert_eq!(run_readonly(&f, c, 10_000).unwrap().outcome, Outcome::Accept);
    }
}
