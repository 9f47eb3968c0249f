//! Static conventions: INITIAL is never re-entered, read-only tables are
//! total, and no head can run past a DELIMITER in the direction it came from.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::machine::{Move, ReadOnlyTm, StandardTm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EntersInitial { from: String, read: String },
    Missing { state: String, read: String },
    Discipline { state: String, read: String, head: usize, dir: Move },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EntersInitial { from, read } => write!(f, "rule ({from}, {read}) enters INITIAL"),
            Violation::Missing { state, read } => write!(f, "no rule for ({state}, {read})"),
            Violation::Discipline { state, read, head, dir } => {
                write!(f, "rule ({state}, {read}) moves head {head} {dir} past a delimiter it reached moving {dir}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl StandardTm {
    /// Missing rows are implicit rejections, so only INITIAL targets can fail.
    pub fn validate(&self) -> ValidationReport {
        let violations = self
            .table
            .iter()
            .filter(|(_, r)| r.to == self.states.initial)
            .map(|(&(s, sym), _)| Violation::EntersInitial {
                from: self.states.names[s].clone(),
                read: self.symbol_name(sym).to_string(),
            })
            .collect();
        ValidationReport { violations }
    }
}

impl ReadOnlyTm {
    fn read_name(&self, syms: &[usize]) -> String {
        syms.iter().map(|&s| self.symbol_name(s)).collect::<Vec<_>>().join(",")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let per = self.rows_per_state();
        for s in 0..self.states.len() {
            if self.states.is_halting(s) {
                continue;
            }
            for off in 0..per {
                let syms = self.decode_row(off);
                if self.get(s, &syms).is_none() {
                    violations.push(Violation::Missing {
                        state: self.states.names[s].clone(),
                        read: self.read_name(&syms),
                    });
                }
            }
        }
        for (s, syms, r) in self.rules() {
            if r.to == self.states.initial {
                violations.push(Violation::EntersInitial {
                    from: self.states.names[s].clone(),
                    read: self.read_name(&syms),
                });
            }
        }
        violations.extend(self.discipline_violations());
        ValidationReport { violations }
    }

    /// Closure over facts "in state q, head h may sit on a DELIMITER it
    /// reached moving d". Stays carry the fact to the next state.
    fn discipline_violations(&self) -> Vec<Violation> {
        let delim = self.delimiter();
        let heads = self.heads();
        let mut by_state: Vec<Vec<(Vec<usize>, super::RoRule)>> = vec![Vec::new(); self.states.len()];
        for (s, syms, r) in self.rules() {
            by_state[s].push((syms, r));
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for rows in &by_state {
            for (_, r) in rows {
                for h in 0..heads {
                    let mv = r.mv(h);
                    if mv != Move::S && seen.insert((r.to, h, mv)) {
                        queue.push_back((r.to, h, mv));
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        while let Some((q, h, d)) = queue.pop_front() {
            for (syms, r) in &by_state[q] {
                if syms[h] != delim {
                    continue;
                }
                let mv = r.mv(h);
                if mv == d {
                    out.insert((q, syms.clone(), h, d));
                } else if mv == Move::S && seen.insert((r.to, h, d)) {
                    queue.push_back((r.to, h, d));
                }
            }
        }
        out.into_iter()
            .map(|(q, syms, head, dir)| Violation::Discipline {
                state: self.states.names[q].clone(),
                read: self.read_name(&syms),
                head,
                dir,
            })
            .collect()
    }
}
