//! Bounded search for an input tuple that a read-only machine rejects.
//!
//! Tape cells are lazy: each cell starts as the set of symbols it could hold
//! and is narrowed only when the transition taken actually depends on it.
//! Branches are explored DELIMITER-first, then by symbol order, so shorter
//! words come first; rayon explores sibling branches and the leftmost hit
//! wins.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::machine::{Move, ReadOnlyTm, RoRule};
use super::run::{run_readonly, Outcome, RoConfig};

type Dom = u64;

#[derive(Clone, Debug)]
struct Lazy {
    /// Per tape class, the domains of cells `0..len`.
    cells: Vec<Vec<Dom>>,
    heads: Vec<i64>,
    last: Vec<Option<Move>>,
    state: usize,
    steps: u64,
}

struct Ctx<'a> {
    f: &'a ReadOnlyTm,
    class: Vec<usize>,
    max_len: usize,
    fuel: u64,
    delim: usize,
    letters: Dom,
}

/// A cell seen by a head: a variable `(class, pos)` or a fixed DELIMITER.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Cell {
    Var(usize, usize),
    Delim,
}

fn bits(d: Dom) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| d >> i & 1 == 1)
}

impl Ctx<'_> {
    fn order_key(&self, s: usize) -> usize {
        if s == self.delim {
            0
        } else {
            s + 1
        }
    }

    /// Make sure the cells under the heads exist; `Err` carries a forced
    /// split of the previous cell (DELIMITER vs letters).
    fn touch(&self, z: &mut Lazy) -> Result<Vec<Cell>, (usize, usize)> {
        let mut out = Vec::with_capacity(z.heads.len());
        for (h, &p) in z.heads.iter().enumerate() {
            let cl = self.class[self.f.tape_of(h)];
            if p < 0 {
                out.push(Cell::Delim);
                continue;
            }
            let p = p as usize;
            let cells = &mut z.cells[cl];
            while cells.len() <= p {
                let q = cells.len();
                let dom = if q >= self.max_len {
                    1 << self.delim
                } else if q == 0 {
                    self.letters | 1 << self.delim
                } else {
                    let prev = cells[q - 1];
                    if prev == 1 << self.delim {
                        1 << self.delim
                    } else if prev & 1 << self.delim != 0 {
                        return Err((cl, q - 1));
                    } else {
                        self.letters | 1 << self.delim
                    }
                };
                cells.push(dom);
            }
            out.push(if z.cells[cl][p] == 1 << self.delim { Cell::Delim } else { Cell::Var(cl, p) });
        }
        Ok(out)
    }

    fn rule_for(&self, z: &Lazy, read: &[Cell], vars: &[(usize, usize)], vals: &[usize]) -> Option<RoRule> {
        let syms: Vec<usize> = read
            .iter()
            .map(|c| match c {
                Cell::Delim => self.delim,
                Cell::Var(cl, p) => vals[vars.iter().position(|v| v == &(*cl, *p)).unwrap()],
            })
            .collect();
        self.f.get(z.state, &syms)
    }

    /// All assignments of `vars` as value vectors.
    fn assignments(z: &Lazy, vars: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &(cl, p) in vars {
            let dom: Vec<usize> = bits(z.cells[cl][p]).collect();
            out = out
                .into_iter()
                .flat_map(|a| {
                    dom.iter().map(move |&v| {
                        let mut a = a.clone();
                        a.push(v);
                        a
                    })
                })
                .collect();
        }
        out
    }

    /// Either the unique rule, or a list of refinements of one variable.
    fn decide(&self, z: &Lazy, read: &[Cell]) -> Result<Option<RoRule>, ((usize, usize), Vec<Dom>)> {
        let mut vars: Vec<(usize, usize)> = Vec::new();
        for c in read {
            if let Cell::Var(cl, p) = *c {
                if !vars.contains(&(cl, p)) {
                    vars.push((cl, p));
                }
            }
        }
        let all = Self::assignments(z, &vars);
        let first = self.rule_for(z, read, &vars, &all[0]);
        if all.iter().all(|a| self.rule_for(z, read, &vars, a) == first) {
            return Ok(first);
        }
        for (i, &(cl, p)) in vars.iter().enumerate() {
            // signature of each value of this variable: rules over the others
            let mut groups: BTreeMap<Vec<Option<RoRule>>, Dom> = BTreeMap::new();
            let mut firsts: BTreeMap<Vec<Option<RoRule>>, usize> = BTreeMap::new();
            for v in bits(z.cells[cl][p]) {
                let sig: Vec<Option<RoRule>> = all
                    .iter()
                    .filter(|a| a[i] == v)
                    .map(|a| self.rule_for(z, read, &vars, a))
                    .collect();
                *groups.entry(sig.clone()).or_insert(0) |= 1 << v;
                let k = self.order_key(v);
                firsts.entry(sig).and_modify(|f| *f = (*f).min(k)).or_insert(k);
            }
            if groups.len() > 1 {
                let mut split: Vec<(usize, Dom)> = groups.into_iter().map(|(sig, d)| (firsts[&sig], d)).collect();
                split.sort();
                return Err(((cl, p), split.into_iter().map(|(_, d)| d).collect()));
            }
        }
        unreachable!("rules differ but no variable separates them")
    }

    fn explore(&self, mut z: Lazy) -> Option<Vec<Vec<usize>>> {
        loop {
            if z.state == self.f.states.accept {
                return None;
            }
            if z.state == self.f.states.reject {
                return self.concretize(&z);
            }
            if z.steps >= self.fuel {
                return None;
            }
            let read = match self.touch(&mut z) {
                Ok(r) => r,
                Err((cl, p)) => {
                    let dom = z.cells[cl][p];
                    let split = vec![1 << self.delim, dom & !(1 << self.delim)];
                    return self.branch(&z, (cl, p), split);
                }
            };
            let rule = match self.decide(&z, &read) {
                Ok(Some(r)) => r,
                Ok(None) => return None,
                Err((var, split)) => return self.branch(&z, var, split),
            };
            for h in 0..z.heads.len() {
                let mv = rule.mv(h);
                if mv == Move::S {
                    continue;
                }
                if read[h] == Cell::Delim && z.last[h] == Some(mv) {
                    return None;
                }
                z.heads[h] += mv.delta();
                z.last[h] = Some(mv);
            }
            z.state = rule.to;
            z.steps += 1;
        }
    }

    fn branch(&self, z: &Lazy, (cl, p): (usize, usize), split: Vec<Dom>) -> Option<Vec<Vec<usize>>> {
        split.into_par_iter().find_map_first(|d| {
            let mut child = z.clone();
            child.cells[cl][p] = d;
            self.explore(child)
        })
    }

    /// Pick the shortest consistent words and confirm by plain simulation.
    fn concretize(&self, z: &Lazy) -> Option<Vec<Vec<usize>>> {
        let words: Vec<Vec<usize>> = z
            .cells
            .iter()
            .map(|cells| {
                let mut w = Vec::new();
                for &d in cells {
                    let letters = d & self.letters;
                    if letters == 0 {
                        break;
                    }
                    if d & 1 << self.delim != 0 && !self.needed_later(cells, w.len()) {
                        break;
                    }
                    w.push(letters.trailing_zeros() as usize);
                }
                w
            })
            .collect();
        let tapes: Vec<Vec<usize>> = self.class.iter().map(|&c| words[c].clone()).collect();
        let res = run_readonly(self.f, RoConfig::initial(self.f, tapes.clone()), self.fuel).ok()?;
        (res.outcome == Outcome::Reject).then_some(tapes)
    }

    fn needed_later(&self, cells: &[Dom], from: usize) -> bool {
        cells[from + 1..].iter().any(|&d| d & 1 << self.delim == 0)
    }
}

/// Sound static test that tapes 1 and 2 are compared cell by cell from the
/// start and any difference ends the run without rejecting. When it holds,
/// only equal pairs can be rejected and the search ties the two tapes.
pub fn equality_gate(f: &ReadOnlyTm) -> bool {
    if f.tapes() < 2 || f.heads_per_tape[0] != 1 || f.heads_per_tape[1] != 1 {
        return false;
    }
    let d = f.delimiter();
    let mut rows: Vec<Vec<(Vec<usize>, RoRule)>> = vec![Vec::new(); f.states.len()];
    for (s, syms, r) in f.rules() {
        rows[s].push((syms, r));
    }
    let mut gate = vec![false; f.states.len()];
    let mut stack = vec![f.states.initial];
    gate[f.states.initial] = true;
    while let Some(q) = stack.pop() {
        for (syms, r) in &rows[q] {
            let (a, b) = (syms[0], syms[1]);
            if a == b && a == d {
                continue;
            }
            if f.states.is_halting(r.to) {
                if a != b && r.to == f.states.reject {
                    return false;
                }
                continue;
            }
            let (m0, m1) = (r.mv(0), r.mv(1));
            let ok = if a == b { m0 == m1 && m0 != Move::L } else { m0 == Move::S && m1 == Move::S };
            if !ok {
                return false;
            }
            if !gate[r.to] {
                gate[r.to] = true;
                stack.push(r.to);
            }
        }
    }
    true
}

/// First rejected input tuple with every word of length at most `max_len`,
/// or `None` if there is none within the bound and `fuel` steps per run.
pub fn search_rejected_word(f: &ReadOnlyTm, max_len: usize, fuel: u64) -> Option<Vec<Vec<usize>>> {
    let radix = f.radix();
    assert!(radix <= 64, "search supports at most 63 letters");
    let mut class: Vec<usize> = (0..f.tapes()).collect();
    if equality_gate(f) {
        class[1] = 0;
    }
    let ctx = Ctx {
        f,
        class,
        max_len,
        fuel,
        delim: f.delimiter(),
        letters: (1u64 << f.alphabet.len()) - 1,
    };
    let z = Lazy {
        cells: vec![Vec::new(); f.tapes()],
        heads: vec![0; f.heads()],
        last: vec![None; f.heads()],
        state: f.states.initial,
        steps: 0,
    };
    ctx.explore(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turing::corpus::{immediate_reject, m_always, m_never};
    use crate::turing::foolproof::construct_foolproof;

    #[test]
    fn finds_history_for_always() {
        let f = construct_foolproof(&m_always()).unwrap();
        assert!(equality_gate(&f));
        let hit = search_rejected_word(&f, 200, 10_000).expect("rejected triple");
        assert_eq!(hit[0], hit[1]);
        assert_eq!(hit[0].len(), 9);
    }

    #[test]
    fn nothing_for_never() {
        let f = construct_foolproof(&m_never()).unwrap();
        assert_eq!(search_rejected_word(&f, 6, 10_000), None);
        assert_eq!(search_rejected_word(&construct_foolproof(&m_always()).unwrap(), 0, 1000), None);
    }

    #[test]
    fn immediate() {
        let f = immediate_reject();
        assert!(!equality_gate(&f));
        assert_eq!(search_rejected_word(&f, 1, 10), Some(vec![vec![]; 3]));
    }
}
