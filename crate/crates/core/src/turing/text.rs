//! Line-oriented machine files.
//!
//! ```text
//! tm standard
//! alphabet x
//! states INITIAL ACCEPT REJECT
//! trans INITIAL x -> ACCEPT x R
//! ```
//!
//! Read-only machines start with `tm readonly <k>` (optionally followed by
//! `heads h1,..,hk`), write `-` and list one symbol and one move per head.
//! `_` is EMPTY, `#` is DELIMITER, `*` matches every symbol. Lines starting
//! with `//` are comments.

use std::fmt::Write as _;

use super::machine::{Move, ReadOnlyTm, StandardTm};
use super::TuringError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    Standard(StandardTm),
    ReadOnly(ReadOnlyTm),
}

fn err(line: usize, message: impl Into<String>) -> TuringError {
    TuringError::Format { line, message: message.into() }
}

fn relabel(line: usize) -> impl Fn(TuringError) -> TuringError {
    move |e| match e {
        TuringError::Format { .. } => e,
        other => err(line, other.to_string()),
    }
}

impl Machine {
    pub fn parse(text: &str) -> Result<Machine, TuringError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with("//"));
        let (ln, header) = lines.next().ok_or_else(|| err(1, "empty machine file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let readonly = match head.as_slice() {
            ["tm", "standard"] | ["tm", "standard", "1"] => None,
            ["tm", "readonly", k] => {
                let k: usize = k.parse().map_err(|_| err(ln, "bad tape count"))?;
                Some(vec![1; k])
            }
            ["tm", "readonly", k, "heads", hs] => {
                let k: usize = k.parse().map_err(|_| err(ln, "bad tape count"))?;
                let hs = hs
                    .split(',')
                    .map(|h| h.parse::<usize>().map_err(|_| err(ln, "bad head count")))
                    .collect::<Result<Vec<_>, _>>()?;
                if hs.len() != k {
                    return Err(err(ln, "one head count per tape expected"));
                }
                Some(hs)
            }
            _ => return Err(err(ln, "expected `tm standard` or `tm readonly <k>`")),
        };
        let mut take = |key: &str| -> Result<(usize, Vec<String>), TuringError> {
            let (ln, l) = lines.next().ok_or_else(|| err(ln, format!("missing `{key}` line")))?;
            let mut words = l.split_whitespace();
            if words.next() != Some(key) {
                return Err(err(ln, format!("expected `{key}`")));
            }
            Ok((ln, words.map(str::to_string).collect()))
        };
        let (ln_a, alphabet) = take("alphabet")?;
        let (ln_s, states) = take("states")?;
        let rest: Vec<(usize, &str)> = lines.collect();
        match readonly {
            None => {
                let mut m = StandardTm::new(alphabet, states).map_err(relabel(ln_a.max(ln_s)))?;
                for (ln, l) in rest {
                    let w: Vec<&str> = l.split_whitespace().collect();
                    let ["trans", from, read, "->", to, write, mv] = w.as_slice() else {
                        return Err(err(ln, "expected `trans <state> <sym> -> <state> <sym|-> <move>`"));
                    };
                    let mv: Move = mv.parse().map_err(|e: String| err(ln, e))?;
                    let write = (*write != "-").then_some(*write);
                    m.add_rule(from, read, to, write, mv).map_err(relabel(ln))?;
                }
                Ok(Machine::Standard(m))
            }
            Some(heads) => {
                let mut m = ReadOnlyTm::new(alphabet, states, heads).map_err(relabel(ln_a.max(ln_s)))?;
                for (ln, l) in rest {
                    let w: Vec<&str> = l.split_whitespace().collect();
                    let ["trans", from, read, "->", to, "-", moves] = w.as_slice() else {
                        return Err(err(ln, "expected `trans <state> <syms> -> <state> - <moves>`"));
                    };
                    let read: Vec<&str> = read.split(',').collect();
                    let moves = moves
                        .split(',')
                        .map(|s| s.parse::<Move>().map_err(|e| err(ln, e)))
                        .collect::<Result<Vec<_>, _>>()?;
                    m.add_rule(from, &read, to, &moves).map_err(relabel(ln))?;
                }
                Ok(Machine::ReadOnly(m))
            }
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Machine::Standard(m) => m.to_text(),
            Machine::ReadOnly(m) => m.to_text(),
        }
    }

    pub fn validate(&self) -> super::ValidationReport {
        match self {
            Machine::Standard(m) => m.validate(),
            Machine::ReadOnly(m) => m.validate(),
        }
    }
}

impl StandardTm {
    pub fn to_text(&self) -> String {
        let mut out = String::from("tm standard\n");
        let _ = writeln!(out, "alphabet {}", self.alphabet.join(" "));
        let _ = writeln!(out, "states {}", self.states.names.join(" "));
        for (&(s, sym), r) in &self.table {
            let write = r.write.map_or("-", |w| self.symbol_name(w));
            let _ = writeln!(
                out,
                "trans {} {} -> {} {} {}",
                self.states.names[s],
                self.symbol_name(sym),
                self.states.names[r.to],
                write,
                r.mv
            );
        }
        out
    }
}

impl ReadOnlyTm {
    /// Rows that agree on a whole suffix of heads are folded into `*`.
    pub fn to_text(&self) -> String {
        let mut out = format!("tm readonly {}", self.tapes());
        if self.heads_per_tape.iter().any(|&h| h != 1) {
            let hs: Vec<String> = self.heads_per_tape.iter().map(|h| h.to_string()).collect();
            let _ = write!(out, " heads {}", hs.join(","));
        }
        out.push('\n');
        let _ = writeln!(out, "alphabet {}", self.alphabet.join(" "));
        let _ = writeln!(out, "states {}", self.states.names.join(" "));
        for s in 0..self.states.len() {
            self.emit(&mut out, s, &mut Vec::new());
        }
        out
    }

    fn emit(&self, out: &mut String, state: usize, prefix: &mut Vec<usize>) {
        let heads = self.heads();
        let radix = self.radix();
        let rest = heads - prefix.len();
        let base = prefix.iter().fold(0usize, |acc, &s| acc * radix + s) * radix.pow(rest as u32);
        let block = radix.pow(rest as u32);
        let first = self.get(state, &self.decode_row(base));
        let uniform = (base..base + block).all(|i| self.get(state, &self.decode_row(i)) == first);
        if uniform {
            if let Some(r) = first {
                let mut syms: Vec<&str> = prefix.iter().map(|&s| self.symbol_name(s)).collect();
                syms.extend(std::iter::repeat("*").take(rest));
                let moves: Vec<String> = r.moves(heads).iter().map(Move::to_string).collect();
                let _ = writeln!(
                    out,
                    "trans {} {} -> {} - {}",
                    self.states.names[state],
                    syms.join(","),
                    self.states.names[r.to],
                    moves.join(",")
                );
            }
            return;
        }
        for s in 0..radix {
            prefix.push(s);
            self.emit(out, state, prefix);
            prefix.pop();
        }
    }
}
