//! `R(M)`: one read-only tape, two heads, accepting exactly the accepting
//! computation histories of `M`.
//!
//! Stage 1 scans the word once with head 1 and checks the block format.
//! Stage 2 puts head 1 on block `i` and head 2 on block `i+1` and walks them
//! in lockstep, checking the local update of `M` cell by cell. Stage 3 looks
//! for an `@ACCEPT` block. Any head that reads a DELIMITER either stays or
//! turns back.

use std::collections::{HashMap, VecDeque};

use super::history::{HSym, HistoryAlphabet};
use super::machine::{Move, ReadOnlyTm, RoRule, StandardTm};
use super::TuringError;

use Move::{L, R, S};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Init {
    /// leading EMPTY cells
    Lead,
    /// inside the input word
    Word,
    /// trailing EMPTY cells
    Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Ctl {
    Start,
    AfterNext { first: bool },
    Init(Init),
    Cells { seen: bool },
    Rewind,
    Align { started: bool },
    Pair,
    /// Lockstep comparison of block `i` (state `s`) with block `i+1`
    /// (state `t`). `a`: cell p-2 held the head moving R; `b`: cell p-1 held
    /// the head staying; `c`: cell p-1 held the head moving R; `vb`: head bit
    /// of the next block at p-1.
    Check { s: usize, t: usize, first: bool, a: bool, b: bool, c: bool, vb: bool },
    RewindFinal,
    Scan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Act {
    Go(Ctl, Move, Move),
    Accept,
    Reject,
}

impl Ctl {
    fn name(&self) -> String {
        let b = |x: bool| if x { '1' } else { '0' };
        match *self {
            Ctl::Start => "INITIAL".into(),
            Ctl::AfterNext { first } => format!("nx{}", b(first)),
            Ctl::Init(p) => format!("in.{p:?}").to_lowercase(),
            Ctl::Cells { seen } => format!("cl{}", b(seen)),
            Ctl::Rewind => "rw".into(),
            Ctl::Align { started } => format!("al{}", b(started)),
            Ctl::Pair => "pr".into(),
            Ctl::Check { s, t, first, a, b: bb, c, vb } => {
                format!("ck.{s}.{t}.{}{}{}{}{}", b(first), b(a), b(bb), b(c), b(vb))
            }
            Ctl::RewindFinal => "rf".into(),
            Ctl::Scan => "sc".into(),
        }
    }
}

struct Builder<'a> {
    m: &'a StandardTm,
}

impl Builder<'_> {
    fn step(&self, ctl: Ctl, s1: HSym, s2: HSym) -> Act {
        let m = self.m;
        let empty = m.empty();
        let go = |c, a, b| Act::Go(c, a, b);
        match ctl {
            Ctl::Start => match s1 {
                HSym::Next => go(Ctl::AfterNext { first: true }, R, S),
                _ => Act::Reject,
            },
            Ctl::AfterNext { first } => match s1 {
                HSym::State(q) if first && q == m.states.initial => go(Ctl::Init(Init::Lead), R, S),
                HSym::State(_) if !first => go(Ctl::Cells { seen: false }, R, S),
                HSym::Delim if !first => go(Ctl::Rewind, L, S),
                _ => Act::Reject,
            },
            Ctl::Init(phase) => match (phase, s1) {
                (Init::Lead, HSym::Cell(l, false)) if l == empty => go(Ctl::Init(Init::Lead), R, S),
                (Init::Lead, HSym::Cell(l, true)) if l != empty => go(Ctl::Init(Init::Word), R, S),
                (Init::Lead, HSym::Cell(_, true)) => go(Ctl::Init(Init::Tail), R, S),
                (Init::Word, HSym::Cell(l, false)) if l != empty => go(Ctl::Init(Init::Word), R, S),
                (Init::Word | Init::Tail, HSym::Cell(l, false)) if l == empty => go(Ctl::Init(Init::Tail), R, S),
                (Init::Word | Init::Tail, HSym::Next) => go(Ctl::AfterNext { first: false }, R, S),
                _ => Act::Reject,
            },
            Ctl::Cells { seen } => match s1 {
                HSym::Cell(_, hb) if !(hb && seen) => go(Ctl::Cells { seen: seen || hb }, R, S),
                HSym::Next if seen => go(Ctl::AfterNext { first: false }, R, S),
                _ => Act::Reject,
            },
            Ctl::Rewind => match s1 {
                HSym::Delim => go(Ctl::Align { started: false }, R, S),
                _ => go(Ctl::Rewind, L, S),
            },
            Ctl::Align { started } => match (s1, s2) {
                (HSym::Next, HSym::Next) if !started => go(Ctl::Align { started: true }, S, R),
                (HSym::Next, HSym::Next) => go(Ctl::Pair, R, R),
                (HSym::Next, HSym::State(_) | HSym::Cell(..)) if started => go(ctl, S, R),
                _ => Act::Reject,
            },
            Ctl::Pair => match (s1, s2) {
                (HSym::State(q), HSym::State(t)) if !m.states.is_halting(q) => go(
                    Ctl::Check { s: q, t, first: true, a: false, b: false, c: false, vb: false },
                    R,
                    R,
                ),
                (HSym::State(_), HSym::Delim) => go(Ctl::RewindFinal, L, S),
                _ => Act::Reject,
            },
            Ctl::Check { s, t, first, a, b, c, vb } => match (s1, s2) {
                (HSym::Cell(l, hb), HSym::Cell(l2, vb2)) => {
                    let mut left = false;
                    let mut stay = false;
                    let mut right = false;
                    if hb {
                        let rule = m.rule(s, l);
                        if rule.to != t || rule.write.unwrap_or(l) != l2 {
                            return Act::Reject;
                        }
                        left = rule.mv == L;
                        stay = rule.mv == S;
                        right = rule.mv == R;
                    } else if l2 != l {
                        return Act::Reject;
                    }
                    let ok = if first { !left } else { vb == (a || b || left) };
                    if !ok {
                        return Act::Reject;
                    }
                    go(Ctl::Check { s, t, first: false, a: c, b: stay, c: right, vb: vb2 }, R, R)
                }
                (HSym::Next, HSym::Next) if !first && !c && vb == (a || b) => go(Ctl::Pair, R, R),
                _ => Act::Reject,
            },
            Ctl::RewindFinal => match s1 {
                HSym::Delim => go(Ctl::Scan, R, S),
                _ => go(Ctl::RewindFinal, L, S),
            },
            Ctl::Scan => match s1 {
                HSym::State(q) if q == m.states.accept => Act::Accept,
                HSym::Delim => Act::Reject,
                _ => go(Ctl::Scan, R, S),
            },
        }
    }
}

/// `R(M)` as a one-tape, two-head read-only machine over the history
/// alphabet of `M`. Both heads start on the first cell.
pub fn construct_readonly(m: &StandardTm) -> Result<ReadOnlyTm, TuringError> {
    let report = m.validate();
    if !report.is_valid() {
        return Err(TuringError::Invalid(report.to_string().trim().replace('\n', "; ")));
    }
    let ha = HistoryAlphabet::of(m);
    let b = Builder { m };
    let syms: Vec<HSym> = (0..=ha.delimiter()).map(|s| ha.classify(s)).collect();

    let mut index: HashMap<Ctl, usize> = HashMap::new();
    let mut order = vec![Ctl::Start];
    index.insert(Ctl::Start, 0);
    let mut queue = VecDeque::from([Ctl::Start]);
    let mut rows: Vec<(usize, usize, usize, Act)> = Vec::new();
    while let Some(ctl) = queue.pop_front() {
        let from = index[&ctl];
        for (i1, &s1) in syms.iter().enumerate() {
            for (i2, &s2) in syms.iter().enumerate() {
                let act = b.step(ctl, s1, s2);
                if let Act::Go(next, ..) = act {
                    if !index.contains_key(&next) {
                        index.insert(next, order.len());
                        order.push(next);
                        queue.push_back(next);
                    }
                }
                rows.push((from, i1, i2, act));
            }
        }
    }
    // halting states sit right after INITIAL
    let shift = |i: usize| if i == 0 { 0 } else { i + 2 };
    let mut names = vec![order[0].name(), "ACCEPT".to_string(), "REJECT".to_string()];
    names.extend(order[1..].iter().map(Ctl::name));
    let mut r = ReadOnlyTm::new(ha.names(m), names, vec![2])?;
    for (from, s1, s2, act) in rows {
        let rule = match act {
            Act::Go(next, m1, m2) => RoRule::new(shift(index[&next]), &[m1, m2]),
            Act::Accept => RoRule::new(1, &[S, S]),
            Act::Reject => RoRule::new(2, &[S, S]),
        };
        r.set(shift(from), &[s1, s2], rule);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turing::corpus::{m_always, m_never, m_parity};
    use crate::turing::history::{decode_history, encode_history};
    use crate::turing::run::{run_readonly, Outcome, RoConfig};

    fn accepts(r: &ReadOnlyTm, w: &[usize]) -> bool {
        let res = run_readonly(r, RoConfig::initial(r, vec![w.to_vec()]), 100_000).unwrap();
        assert_ne!(res.outcome, Outcome::OutOfFuel);
        res.outcome == Outcome::Accept
    }

    #[test]
    fn valid_and_accepts_histories() {
        for m in [m_always(), m_parity(), m_never()] {
            let r = construct_readonly(&m).unwrap();
            assert!(r.validate().is_valid(), "{}", r.validate());
            for len in 0..5 {
                let w = vec![0; len];
                match encode_history(&m, &w, 100) {
                    Ok(h) => {
                        assert!(accepts(&r, &h));
                        assert_eq!(decode_history(&m, &h).unwrap(), w);
                    }
                    Err(_) => {}
                }
            }
        }
    }

    #[test]
    fn corrupted_histories_rejected() {
        let m = m_parity();
        let r = construct_readonly(&m).unwrap();
        let h = encode_history(&m, &[0, 0], 100).unwrap();
        let alphabet = r.alphabet.len();
        for i in 0..h.len() {
            for s in 0..alphabet {
                if s == h[i] {
                    continue;
                }
                let mut bad = h.clone();
                bad[i] = s;
                assert_eq!(accepts(&r, &bad), decode_history(&m, &bad).is_ok(), "pos {i} sym {s}");
            }
        }
    }

    #[test]
    fn short_words_sound() {
        // every accepted word over the alphabet up to length 5 decodes
        let m = m_always();
        let r = construct_readonly(&m).unwrap();
        let k = r.alphabet.len();
        let mut w = Vec::new();
        fn rec(r: &ReadOnlyTm, m: &StandardTm, w: &mut Vec<usize>, k: usize, left: usize) {
            if accepts(r, w) {
                assert!(decode_history(m, w).is_ok(), "{w:?}");
            } else {
                assert!(decode_history(m, w).is_err(), "{w:?}");
            }
            if left == 0 {
                return;
            }
            for s in 0..k {
                w.push(s);
                rec(r, m, w, k, left - 1);
                w.pop();
            }
        }
        rec(&r, &m, &mut w, k, 5);
    }
}
