//! Finite-window points of the system and the map `T_X`.

use crate::turing::{ReadOnlyTm, RoConfig};

use super::system::{TuringDynamicalSystem, TAPES};
use super::TdsError;

/// Letters of one tape on positions `lo .. lo + cells.len()` (relative to
/// the head). Reading outside is an error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i64,
    pub cells: Vec<u32>,
}

impl Window {
    pub fn get(&self, pos: i64) -> Option<u32> {
        let i = pos - self.lo;
        (i >= 0).then(|| self.cells.get(i as usize).copied()).flatten()
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.cells.len() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicConfiguration {
    pub tapes: Vec<Window>,
    pub state: u32,
}

impl SymbolicConfiguration {
    pub fn new(tapes: Vec<Window>, state: u32) -> Result<Self, TdsError> {
        if tapes.len() != TAPES || tapes.iter().any(|w| w.get(0).is_none()) {
            return Err(TdsError::BadConfiguration("three windows containing position 0 expected".into()));
        }
        Ok(SymbolicConfiguration { tapes, state })
    }

    /// Encode a machine configuration, keeping `pad` delimiter cells beyond
    /// each end of the stored tape contents.
    pub fn from_machine(tds: &TuringDynamicalSystem, c: &RoConfig, pad: usize) -> Self {
        let f = tds.machine();
        let tapes = (0..TAPES)
            .map(|t| {
                let tape = &c.tapes[f.tape_of(t)];
                let h = c.heads[t];
                let lo_abs = (-(pad as i64)).min(h);
                let hi_abs = (tape.len() as i64 + pad as i64).max(h + 1);
                let cells = (lo_abs..hi_abs)
                    .map(|p| {
                        let sym = if p < 0 || p as usize >= tape.len() { f.delimiter() } else { tape[p as usize] };
                        tds.code_of(sym)
                    })
                    .collect();
                Window { lo: lo_abs - h, cells }
            })
            .collect();
        SymbolicConfiguration { tapes, state: tds.state_codes[c.state] }
    }

    /// Whether this point agrees with a machine configuration on every cell
    /// of its windows.
    pub fn agrees_with(&self, tds: &TuringDynamicalSystem, f: &ReadOnlyTm, c: &RoConfig) -> bool {
        if self.state != tds.state_codes[c.state] {
            return false;
        }
        (0..TAPES).all(|t| {
            let tape = &c.tapes[f.tape_of(t)];
            let w = &self.tapes[t];
            (w.lo..w.hi()).all(|p| {
                let abs = c.heads[t] + p;
                let sym = if abs < 0 || abs as usize >= tape.len() { f.delimiter() } else { tape[abs as usize] };
                tds.symbol_of(w.get(p).unwrap()) == sym
            })
        })
    }
}

/// Index of the piece containing `c`.
pub fn classify(tds: &TuringDynamicalSystem, c: &SymbolicConfiguration) -> Result<usize, TdsError> {
    for &i in tds.pieces_for_state(c.state) {
        let chi = &tds.pieces[i].chi;
        let mut inside = true;
        for (t, map) in chi.tapes.iter().enumerate() {
            for (&p, &set) in map {
                let letter = c.tapes[t].get(p).ok_or(TdsError::WindowExhausted { tape: t, pos: p })?;
                if set >> letter & 1 == 0 {
                    inside = false;
                }
            }
        }
        if inside {
            return Ok(i);
        }
    }
    Err(TdsError::NoPiece)
}

/// `T_X`: apply the element of the piece containing `c`.
pub fn tds_step(tds: &TuringDynamicalSystem, c: &SymbolicConfiguration) -> Result<SymbolicConfiguration, TdsError> {
    let piece = &tds.pieces[classify(tds, c)?];
    let g = &piece.gamma;
    let tapes = c
        .tapes
        .iter()
        .zip(g.shifts)
        .map(|(w, s)| Window { lo: w.lo + s, cells: w.cells.clone() })
        .collect::<Vec<_>>();
    let out = SymbolicConfiguration { tapes, state: g.gl.apply(c.state) };
    if out.tapes.iter().enumerate().any(|(_, w)| w.get(0).is_none()) {
        let t = out.tapes.iter().position(|w| w.get(0).is_none()).unwrap();
        return Err(TdsError::WindowExhausted { tape: t, pos: 0 });
    }
    Ok(out)
}
