//! Computation histories: `NEXT @s0 cells NEXT @s1 cells ... NEXT`, every
//! block over one common window, cells carrying `(letter, head bit)`.

use std::collections::BTreeMap;

use super::machine::StandardTm;
use super::run::{step_standard, StdConfig};
use super::TuringError;

/// Symbol numbering of the history alphabet of a machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HistoryAlphabet {
    pub states: usize,
    /// Letters including EMPTY.
    pub letters: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HSym {
    Next,
    State(usize),
    Cell(usize, bool),
    Delim,
}

impl HistoryAlphabet {
    pub fn of(m: &StandardTm) -> Self {
        HistoryAlphabet { states: m.states.len(), letters: m.alphabet.len() + 1 }
    }

    pub fn len(&self) -> usize {
        1 + self.states + 2 * self.letters
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn next(&self) -> usize {
        0
    }

    pub fn state(&self, s: usize) -> usize {
        1 + s
    }

    pub fn cell(&self, letter: usize, head: bool) -> usize {
        1 + self.states + 2 * letter + head as usize
    }

    pub fn delimiter(&self) -> usize {
        self.len()
    }

    pub fn classify(&self, sym: usize) -> HSym {
        if sym == 0 {
            HSym::Next
        } else if sym <= self.states {
            HSym::State(sym - 1)
        } else if sym < self.len() {
            let c = sym - 1 - self.states;
            HSym::Cell(c / 2, c % 2 == 1)
        } else {
            HSym::Delim
        }
    }

    pub fn names(&self, m: &StandardTm) -> Vec<String> {
        let mut out = vec!["NEXT".to_string()];
        out.extend(m.states.names.iter().map(|s| format!("@{s}")));
        for c in 0..self.letters {
            for b in 0..2 {
                out.push(format!("{}/{b}", m.symbol_name(c)));
            }
        }
        out
    }
}

/// History of the accepting run of `m` on `word`.
pub fn encode_history(m: &StandardTm, word: &[usize], fuel: u64) -> Result<Vec<usize>, TuringError> {
    if let Some(&bad) = word.iter().find(|&&s| s >= m.alphabet.len()) {
        return Err(TuringError::BadSymbol(format!("input symbol {bad} is not a letter")));
    }
    let mut c = StdConfig::initial(m, word);
    let mut configs = vec![c.clone()];
    while step_standard(m, &mut c).is_some() {
        configs.push(c.clone());
        if configs.len() as u64 > fuel + 1 {
            return Err(TuringError::NotAccepted { fuel });
        }
    }
    if c.state != m.states.accept {
        return Err(TuringError::NotAccepted { fuel });
    }
    let lo = configs.iter().map(|c| c.head).min().unwrap().min(0);
    let hi = configs.iter().map(|c| c.head).max().unwrap().max(word.len() as i64 - 1);
    let ha = HistoryAlphabet::of(m);
    let mut out = vec![ha.next()];
    for c in &configs {
        out.push(ha.state(c.state));
        for (i, s) in c.window(m.empty(), lo, hi).into_iter().enumerate() {
            out.push(ha.cell(s, lo + i as i64 == c.head));
        }
        out.push(ha.next());
    }
    Ok(out)
}

/// Inverse of [`encode_history`] on well-formed accepting histories; returns
/// the input word. Used as an independent check of `R(M)`.
pub fn decode_history(m: &StandardTm, word: &[usize]) -> Result<Vec<usize>, String> {
    let ha = HistoryAlphabet::of(m);
    let syms: Vec<HSym> = word.iter().map(|&s| ha.classify(s)).collect();
    if syms.first() != Some(&HSym::Next) || syms.last() != Some(&HSym::Next) || syms.len() < 2 {
        return Err("history must start and end with NEXT".into());
    }
    let mut blocks: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    for chunk in syms[1..syms.len() - 1].split(|s| *s == HSym::Next) {
        let Some((HSym::State(s), cells)) = chunk.split_first().map(|(a, b)| (*a, b)) else {
            return Err("block without state".into());
        };
        let mut letters = Vec::new();
        let mut head = None;
        for c in cells {
            let HSym::Cell(l, b) = *c else { return Err("stray symbol in block".into()) };
            if b {
                if head.is_some() {
                    return Err("two head markers in one block".into());
                }
                head = Some(letters.len());
            }
            letters.push(l);
        }
        let head = head.ok_or("block without head marker")?;
        blocks.push((s, letters, head));
    }
    let width = blocks[0].1.len();
    if blocks.iter().any(|b| b.1.len() != width) {
        return Err("blocks of different widths".into());
    }
    let empty = m.empty();
    let (s0, cells0, h0) = &blocks[0];
    if *s0 != m.states.initial {
        return Err("first block is not INITIAL".into());
    }
    let first_letter = cells0.iter().position(|&c| c != empty);
    let input: Vec<usize> = match first_letter {
        Some(f) => {
            let end = cells0[f..].iter().position(|&c| c == empty).map_or(width, |e| f + e);
            if f != *h0 || cells0[end..].iter().any(|&c| c != empty) {
                return Err("first block is not an initial configuration".into());
            }
            cells0[f..end].to_vec()
        }
        None => Vec::new(),
    };
    for pair in blocks.windows(2) {
        let (s, cells, h) = &pair[0];
        if m.states.is_halting(*s) {
            return Err("halting configuration is followed by another".into());
        }
        let mut c = StdConfig {
            tape: cells.iter().enumerate().filter(|(_, &l)| l != empty).map(|(i, &l)| (i as i64, l)).collect::<BTreeMap<_, _>>(),
            head: *h as i64,
            state: *s,
        };
        step_standard(m, &mut c);
        if c.head < 0 || c.head >= width as i64 {
            return Err("head leaves the window".into());
        }
        let (s2, cells2, h2) = &pair[1];
        if c.state != *s2 || c.head != *h2 as i64 || c.window(empty, 0, width as i64 - 1) != *cells2 {
            return Err("consecutive configurations do not correspond".into());
        }
    }
    if blocks.last().unwrap().0 != m.states.accept {
        return Err("last configuration is not accepting".into());
    }
    Ok(input)
}
