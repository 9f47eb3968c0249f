//! Deterministic simulators.

use std::collections::BTreeMap;

use super::machine::{Move, ReadOnlyTm, StandardTm};
use super::TuringError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Accept,
    Reject,
    OutOfFuel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult<C> {
    pub outcome: Outcome,
    pub steps: u64,
    pub config: C,
}

/// One bi-infinite tape; absent cells hold EMPTY.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdConfig {
    pub tape: BTreeMap<i64, usize>,
    pub head: i64,
    pub state: usize,
}

impl StdConfig {
    /// Input written from position 0, head on its first symbol.
    pub fn initial(m: &StandardTm, word: &[usize]) -> Self {
        StdConfig {
            tape: word.iter().enumerate().map(|(i, &s)| (i as i64, s)).collect(),
            head: 0,
            state: m.states.initial,
        }
    }

    pub fn read(&self, empty: usize) -> usize {
        self.tape.get(&self.head).copied().unwrap_or(empty)
    }

    /// Symbols on `lo..=hi`.
    pub fn window(&self, empty: usize, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|p| self.tape.get(&p).copied().unwrap_or(empty)).collect()
    }
}

/// Apply one transition; `None` when the configuration is halted.
pub fn step_standard(m: &StandardTm, c: &mut StdConfig) -> Option<()> {
    if m.states.is_halting(c.state) {
        return None;
    }
    let empty = m.empty();
    let rule = m.rule(c.state, c.read(empty));
    if let Some(w) = rule.write {
        if w == empty {
            c.tape.remove(&c.head);
        } else {
            c.tape.insert(c.head, w);
        }
    }
    c.head += rule.mv.delta();
    c.state = rule.to;
    Some(())
}

pub fn run_standard(m: &StandardTm, mut c: StdConfig, fuel: u64) -> Result<RunResult<StdConfig>, TuringError> {
    if c.state >= m.states.len() || c.tape.values().any(|&s| s >= m.empty()) {
        return Err(TuringError::BadConfiguration("state or symbol out of range".into()));
    }
    let mut steps = 0;
    loop {
        if c.state == m.states.accept {
            return Ok(RunResult { outcome: Outcome::Accept, steps, config: c });
        }
        if c.state == m.states.reject {
            return Ok(RunResult { outcome: Outcome::Reject, steps, config: c });
        }
        if steps == fuel {
            return Ok(RunResult { outcome: Outcome::OutOfFuel, steps, config: c });
        }
        step_standard(m, &mut c);
        steps += 1;
    }
}

/// Read-only configuration: tape `i` holds `tapes[i]` on positions
/// `0..len`, DELIMITER everywhere else. `last` records the direction each
/// head last moved in (stays do not reset it).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RoConfig {
    pub tapes: Vec<Vec<usize>>,
    pub heads: Vec<i64>,
    pub state: usize,
    pub last: Vec<Option<Move>>,
}

impl RoConfig {
    /// Words on the tapes, every head on position 0, state INITIAL.
    pub fn initial(m: &ReadOnlyTm, words: Vec<Vec<usize>>) -> Self {
        let heads = m.heads();
        RoConfig { tapes: words, heads: vec![0; heads], state: m.states.initial, last: vec![None; heads] }
    }

    pub fn read(&self, m: &ReadOnlyTm, head: usize) -> usize {
        let tape = &self.tapes[m.tape_of(head)];
        let p = self.heads[head];
        if p < 0 || p as usize >= tape.len() {
            m.delimiter()
        } else {
            tape[p as usize]
        }
    }

    pub fn reads(&self, m: &ReadOnlyTm) -> Vec<usize> {
        (0..m.heads()).map(|h| self.read(m, h)).collect()
    }

    fn check(&self, m: &ReadOnlyTm) -> Result<(), TuringError> {
        if self.tapes.len() != m.tapes() || self.heads.len() != m.heads() || self.last.len() != m.heads() {
            return Err(TuringError::BadConfiguration("tape or head count mismatch".into()));
        }
        if self.state >= m.states.len() {
            return Err(TuringError::BadConfiguration("state out of range".into()));
        }
        if self.tapes.iter().flatten().any(|&s| s > m.delimiter()) {
            return Err(TuringError::BadConfiguration("symbol out of range".into()));
        }
        Ok(())
    }
}

/// One read-only step with the delimiter discipline enforced.
pub fn step_readonly(m: &ReadOnlyTm, c: &mut RoConfig, step: u64) -> Result<(), TuringError> {
    let reads = c.reads(m);
    let rule = m
        .get(c.state, &reads)
        .ok_or_else(|| TuringError::Invalid(format!("no rule for state `{}`", m.states.names[c.state])))?;
    for h in 0..m.heads() {
        let mv = rule.mv(h);
        if mv == Move::S {
            continue;
        }
        if reads[h] == m.delimiter() && c.last[h] == Some(mv) {
            return Err(TuringError::Discipline { step, head: h });
        }
        c.heads[h] += mv.delta();
        c.last[h] = Some(mv);
    }
    c.state = rule.to;
    Ok(())
}

pub fn run_readonly(m: &ReadOnlyTm, mut c: RoConfig, fuel: u64) -> Result<RunResult<RoConfig>, TuringError> {
    c.check(m)?;
    let mut steps = 0;
    loop {
        if c.state == m.states.accept {
            return Ok(RunResult { outcome: Outcome::Accept, steps, config: c });
        }
        if c.state == m.states.reject {
            return Ok(RunResult { outcome: Outcome::Reject, steps, config: c });
        }
        if steps == fuel {
            return Ok(RunResult { outcome: Outcome::OutOfFuel, steps, config: c });
        }
        step_readonly(m, &mut c, steps)?;
        steps += 1;
    }
}
