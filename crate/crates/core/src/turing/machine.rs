//! Machine descriptions: one-tape read/write machines and multi-tape,
//! multi-head read-only machines.

use std::collections::BTreeMap;
use std::fmt;

use super::TuringError;

pub const INITIAL: &str = "INITIAL";
pub const ACCEPT: &str = "ACCEPT";
pub const REJECT: &str = "REJECT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    L,
    S,
    R,
}

impl Move {
    pub fn delta(self) -> i64 {
        match self {
            Move::L => -1,
            Move::S => 0,
            Move::R => 1,
        }
    }

    fn code(self) -> u16 {
        match self {
            Move::L => 0,
            Move::S => 1,
            Move::R => 2,
        }
    }

    fn from_code(c: u16) -> Move {
        match c {
            0 => Move::L,
            1 => Move::S,
            _ => Move::R,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::S => "S",
            Move::R => "R",
        })
    }
}

impl std::str::FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "L" => Ok(Move::L),
            "S" => Ok(Move::S),
            "R" => Ok(Move::R),
            _ => Err(format!("bad move `{s}`")),
        }
    }
}

/// State list with the three distinguished states located by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct States {
    pub names: Vec<String>,
    pub initial: usize,
    pub accept: usize,
    pub reject: usize,
}

impl States {
    pub fn new(names: Vec<String>) -> Result<Self, TuringError> {
        let find = |n: &str| {
            names
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| TuringError::MissingState(n.to_string()))
        };
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(TuringError::Duplicate(dup.clone()));
        }
        Ok(States {
            initial: find(INITIAL)?,
            accept: find(ACCEPT)?,
            reject: find(REJECT)?,
            names,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_halting(&self, s: usize) -> bool {
        s == self.accept || s == self.reject
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }
}

fn check_alphabet(alphabet: &[String], reserved: &[&str]) -> Result<(), TuringError> {
    let mut seen = std::collections::HashSet::new();
    for a in alphabet {
        if reserved.contains(&a.as_str()) || a.is_empty() || a.contains([',', ' ']) {
            return Err(TuringError::BadSymbol(a.clone()));
        }
        if !seen.insert(a) {
            return Err(TuringError::Duplicate(a.clone()));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StdRule {
    pub to: usize,
    /// `None` keeps the symbol under the head.
    pub write: Option<usize>,
    pub mv: Move,
}

/// One tape, one read/write head. Symbols are `0..|A|`, with `|A|` standing
/// for EMPTY. A missing row means "go to REJECT without moving".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTm {
    pub alphabet: Vec<String>,
    pub states: States,
    pub table: BTreeMap<(usize, usize), StdRule>,
}

impl StandardTm {
    pub fn new(alphabet: Vec<String>, states: Vec<String>) -> Result<Self, TuringError> {
        check_alphabet(&alphabet, &["_", "#", "-", "*"])?;
        Ok(StandardTm { alphabet, states: States::new(states)?, table: BTreeMap::new() })
    }

    pub fn empty(&self) -> usize {
        self.alphabet.len()
    }

    pub fn symbol_name(&self, s: usize) -> &str {
        if s == self.empty() {
            "_"
        } else {
            &self.alphabet[s]
        }
    }

    pub fn symbol(&self, name: &str) -> Option<usize> {
        if name == "_" {
            Some(self.empty())
        } else {
            self.alphabet.iter().position(|a| a == name)
        }
    }

    pub fn add_rule(&mut self, from: &str, read: &str, to: &str, write: Option<&str>, mv: Move) -> Result<(), TuringError> {
        let f = self.states.index(from).ok_or_else(|| TuringError::UnknownState(from.into()))?;
        let t = self.states.index(to).ok_or_else(|| TuringError::UnknownState(to.into()))?;
        let r = self.symbol(read).ok_or_else(|| TuringError::UnknownSymbol(read.into()))?;
        let w = match write {
            Some(w) => Some(self.symbol(w).ok_or_else(|| TuringError::UnknownSymbol(w.into()))?),
            None => None,
        };
        if self.table.insert((f, r), StdRule { to: t, write: w, mv }).is_some() {
            return Err(TuringError::Duplicate(format!("{from},{read}")));
        }
        Ok(())
    }

    /// The effective rule: missing rows reject in place.
    pub fn rule(&self, state: usize, sym: usize) -> StdRule {
        self.table
            .get(&(state, sym))
            .copied()
            .unwrap_or(StdRule { to: self.states.reject, write: None, mv: Move::S })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoRule {
    pub to: usize,
    moves: u16,
}

impl RoRule {
    pub fn new(to: usize, moves: &[Move]) -> Self {
        assert!(moves.len() <= 8);
        let moves = moves.iter().enumerate().fold(0u16, |acc, (i, m)| acc | m.code() << (2 * i));
        RoRule { to, moves }
    }

    pub fn mv(&self, head: usize) -> Move {
        Move::from_code(self.moves >> (2 * head) & 3)
    }

    pub fn moves(&self, heads: usize) -> Vec<Move> {
        (0..heads).map(|h| self.mv(h)).collect()
    }
}

/// Read-only machine with `k` tapes; tape `i` carries `heads_per_tape[i]`
/// heads. Symbols are `0..|A|`, with `|A|` standing for DELIMITER. Rows are
/// indexed by state and the tuple of symbols under all heads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadOnlyTm {
    pub alphabet: Vec<String>,
    pub states: States,
    pub heads_per_tape: Vec<usize>,
    table: Vec<Option<RoRule>>,
}

impl ReadOnlyTm {
    pub fn new(alphabet: Vec<String>, states: Vec<String>, heads_per_tape: Vec<usize>) -> Result<Self, TuringError> {
        check_alphabet(&alphabet, &["_", "#", "-", "*"])?;
        let heads: usize = heads_per_tape.iter().sum();
        if heads == 0 || heads > 8 || heads_per_tape.contains(&0) {
            return Err(TuringError::Malformed("between 1 and 8 heads, at least one per tape".into()));
        }
        let states = States::new(states)?;
        let rows = (alphabet.len() + 1)
            .checked_pow(heads as u32)
            .and_then(|r| r.checked_mul(states.len()))
            .filter(|&r| r <= 1 << 28)
            .ok_or_else(|| TuringError::Malformed("transition table too large".into()))?;
        Ok(ReadOnlyTm { alphabet, states, heads_per_tape, table: vec![None; rows] })
    }

    pub fn tapes(&self) -> usize {
        self.heads_per_tape.len()
    }

    pub fn heads(&self) -> usize {
        self.heads_per_tape.iter().sum()
    }

    /// Tape carrying head `h`.
    pub fn tape_of(&self, h: usize) -> usize {
        let mut acc = 0;
        for (t, &n) in self.heads_per_tape.iter().enumerate() {
            acc += n;
            if h < acc {
                return t;
            }
        }
        panic!("head {h} out of range")
    }

    pub fn delimiter(&self) -> usize {
        self.alphabet.len()
    }

    pub fn radix(&self) -> usize {
        self.alphabet.len() + 1
    }

    pub fn symbol_name(&self, s: usize) -> &str {
        if s == self.delimiter() {
            "#"
        } else {
            &self.alphabet[s]
        }
    }

    pub fn symbol(&self, name: &str) -> Option<usize> {
        if name == "#" {
            Some(self.delimiter())
        } else {
            self.alphabet.iter().position(|a| a == name)
        }
    }

    fn row(&self, state: usize, syms: &[usize]) -> usize {
        let r = self.radix();
        syms.iter().fold(state, |acc, &s| acc * r + s)
    }

    pub fn rows_per_state(&self) -> usize {
        self.radix().pow(self.heads() as u32)
    }

    /// Symbol tuple for a row offset within a state.
    pub fn decode_row(&self, mut offset: usize) -> Vec<usize> {
        let r = self.radix();
        let mut out = vec![0; self.heads()];
        for slot in out.iter_mut().rev() {
            *slot = offset % r;
            offset /= r;
        }
        out
    }

    pub fn get(&self, state: usize, syms: &[usize]) -> Option<RoRule> {
        self.table[self.row(state, syms)]
    }

    pub fn set(&mut self, state: usize, syms: &[usize], rule: RoRule) {
        let i = self.row(state, syms);
        self.table[i] = Some(rule);
    }

    /// Add a rule by names; `*` in a symbol slot means every symbol.
    pub fn add_rule(&mut self, from: &str, read: &[&str], to: &str, moves: &[Move]) -> Result<(), TuringError> {
        let f = self.states.index(from).ok_or_else(|| TuringError::UnknownState(from.into()))?;
        let t = self.states.index(to).ok_or_else(|| TuringError::UnknownState(to.into()))?;
        if read.len() != self.heads() || moves.len() != self.heads() {
            return Err(TuringError::Malformed(format!("rule for `{from}` has the wrong arity")));
        }
        let mut choices: Vec<Vec<usize>> = Vec::new();
        for r in read {
            if *r == "*" {
                choices.push((0..self.radix()).collect());
            } else {
                choices.push(vec![self.symbol(r).ok_or_else(|| TuringError::UnknownSymbol(r.to_string()))?]);
            }
        }
        let rule = RoRule::new(t, moves);
        let mut idx = vec![0usize; choices.len()];
        loop {
            let syms: Vec<usize> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            if self.get(f, &syms).is_some() {
                return Err(TuringError::Duplicate(format!("{from},{}", read.join(","))));
            }
            self.set(f, &syms, rule);
            // odometer
            let mut h = choices.len();
            loop {
                if h == 0 {
                    return Ok(());
                }
                h -= 1;
                idx[h] += 1;
                if idx[h] < choices[h].len() {
                    break;
                }
                idx[h] = 0;
            }
        }
    }

    /// All defined rows as `(state, symbols, rule)`.
    pub fn rules(&self) -> impl Iterator<Item = (usize, Vec<usize>, RoRule)> + '_ {
        let per = self.rows_per_state();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(i, r)| r.map(|r| (i / per, self.decode_row(i % per), r)))
    }
}
