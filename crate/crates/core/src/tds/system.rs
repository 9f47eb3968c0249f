//! The dynamical system of a foolproof three-tape machine: a partition of
//! `((Z/2)^m)^Z x ((Z/2)^m)^Z x ((Z/2)^m)^Z x (Z/2)^n` into cylinder pieces,
//! each carrying head shifts and a linear map on the state vector.

use std::collections::{BTreeMap, HashMap};

use crate::duality::structured::full_mask;
use crate::duality::{transvection, AffineElem, F2Matrix, HElem, SourceElem, StructCylinder};
use crate::algebra::WideFactor;
use crate::turing::{Move, ReadOnlyTm, RoRule};

use super::TdsError;

pub const TAPES: usize = 3;
pub const MAX_PIECES: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    /// Fresh starts: INITIAL state, a DELIMITER at -1 and a letter at 0 on every tape.
    Initial,
    Accept,
    Reject,
    Work,
}

/// Group element of `Z^3 x GL(n, 2)` attached to a piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gamma {
    pub shifts: [i64; TAPES],
    pub gl: F2Matrix,
}

impl Gamma {
    pub fn identity(n: usize) -> Self {
        Gamma { shifts: [0; TAPES], gl: F2Matrix::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.shifts == [0; TAPES] && self.gl.is_identity()
    }

    /// As an element of `((Z/2)^m wr Z)^3 x H`. Conjugating `chi_sigma` by
    /// `A` gives `chi_{A^-T sigma}`, so the GL part is stored transposed.
    pub fn source_elem(&self) -> SourceElem {
        SourceElem {
            tapes: self.shifts.iter().map(|&s| WideFactor::shift_only(s)).collect(),
            h: HElem::Affine(AffineElem::linear(self.gl.transpose())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub chi: StructCylinder,
    pub gamma: Gamma,
    pub kind: PieceKind,
}

#[derive(Clone, Debug)]
pub struct TuringDynamicalSystem {
    /// Letter exponent: least `m` with `|A| + 1 <= 2^m`.
    pub m: u32,
    /// State exponent: least `n` with `|S| < 2^n`.
    pub n: usize,
    /// Code of each letter of the machine, `1, 2, ...` in declaration order.
    pub letter_codes: Vec<u32>,
    /// Code of each state, `1, 2, ...` in declaration order.
    pub state_codes: Vec<u32>,
    pub pieces: Vec<Piece>,
    by_state: HashMap<u32, Vec<usize>>,
    machine: ReadOnlyTm,
}

fn head_shift(mv: Move) -> i64 {
    // the cell right of the head becomes the new origin
    -mv.delta()
}

impl TuringDynamicalSystem {
    pub fn machine(&self) -> &ReadOnlyTm {
        &self.machine
    }

    pub fn letter_set(&self) -> u64 {
        self.letter_codes.iter().fold(0, |acc, &c| acc | 1 << c)
    }

    pub fn delimiter_set(&self) -> u64 {
        full_mask(self.m) & !self.letter_set()
    }

    /// Machine symbol read from a letter code; unused codes read as DELIMITER.
    pub fn symbol_of(&self, code: u32) -> usize {
        self.letter_codes
            .iter()
            .position(|&c| c == code)
            .unwrap_or(self.machine.delimiter())
    }

    pub fn code_of(&self, sym: usize) -> u32 {
        if sym == self.machine.delimiter() {
            0
        } else {
            self.letter_codes[sym]
        }
    }

    /// Machine state behind a state code, if any.
    pub fn state_of(&self, code: u32) -> Option<usize> {
        self.state_codes.iter().position(|&c| c == code)
    }

    pub fn pieces_for_state(&self, code: u32) -> &[usize] {
        self.by_state.get(&code).map_or(&[], Vec::as_slice)
    }

    pub fn rebuild_index(&mut self) {
        self.by_state.clear();
        for (i, p) in self.pieces.iter().enumerate() {
            let s = p.chi.state.expect("pieces pin the state");
            self.by_state.entry(s).or_default().push(i);
        }
    }

    pub fn initial_code(&self) -> u32 {
        self.state_codes[self.machine.states.initial]
    }
}

/// Least `m` with `count + 1 <= 2^m`, and least `n` with `count < 2^n`.
pub fn exponents(letters: usize, states: usize) -> (u32, usize) {
    let m = (0..).find(|&m| letters + 1 <= 1usize << m).unwrap();
    let n = (0..).find(|&n| states < 1usize << n).unwrap();
    (m, n)
}

/// Rows of one state grouped into product boxes `S1 x S2 x S3 -> rule`.
fn boxes(f: &ReadOnlyTm, state: usize) -> Vec<([u64; TAPES], RoRule)> {
    let radix = f.radix();
    let rule = |a, b, c| f.get(state, &[a, b, c]).expect("validated machines are total");
    let mut level2: BTreeMap<(RoRule, u64, u64), u64> = BTreeMap::new();
    for s1 in 0..radix {
        let mut level1: BTreeMap<(RoRule, u64), u64> = BTreeMap::new();
        for s2 in 0..radix {
            let mut level0: BTreeMap<RoRule, u64> = BTreeMap::new();
            for s3 in 0..radix {
                *level0.entry(rule(s1, s2, s3)).or_default() |= 1 << s3;
            }
            for (r, set3) in level0 {
                *level1.entry((r, set3)).or_default() |= 1 << s2;
            }
        }
        for ((r, set3), set2) in level1 {
            *level2.entry((r, set2, set3)).or_default() |= 1 << s1;
        }
    }
    level2.into_iter().map(|((r, s2, s3), s1)| ([s1, s2, s3], r)).collect()
}

/// Build the system of a valid three-tape, one-head-per-tape machine.
pub fn build_tds(f: &ReadOnlyTm) -> Result<TuringDynamicalSystem, TdsError> {
    let report = f.validate();
    if !report.is_valid() {
        return Err(TdsError::Invalid(report.to_string().lines().take(5).collect::<Vec<_>>().join("; ")));
    }
    build_tds_unchecked(f)
}

/// As [`build_tds`] without re-validating (for machines checked elsewhere).
pub fn build_tds_unchecked(f: &ReadOnlyTm) -> Result<TuringDynamicalSystem, TdsError> {
    if f.heads_per_tape != [1, 1, 1] {
        return Err(TdsError::Invalid("need three tapes with one head each".into()));
    }
    let (m, n) = exponents(f.alphabet.len(), f.states.len());
    if m > 6 || n > 16 {
        return Err(TdsError::TooLarge(format!("m = {m}, n = {n}")));
    }
    let letter_codes: Vec<u32> = (1..=f.alphabet.len() as u32).collect();
    let state_codes: Vec<u32> = (1..=f.states.len() as u32).collect();
    let mut tds = TuringDynamicalSystem {
        m,
        n,
        letter_codes,
        state_codes,
        pieces: Vec::new(),
        by_state: HashMap::new(),
        machine: f.clone(),
    };
    let letters = tds.letter_set();
    let delims = tds.delimiter_set();
    // symbol set -> code set
    let codes = |syms: u64| -> u64 {
        (0..f.radix()).filter(|s| syms >> s & 1 == 1).fold(0, |acc, s| {
            if s == f.delimiter() {
                acc | delims
            } else {
                acc | 1 << tds.letter_codes[s]
            }
        })
    };
    let mut pieces = Vec::new();
    for code in 0..(1u32 << n) {
        let base = StructCylinder::full(TAPES).with_state(code).unwrap();
        let state = tds.state_of(code);
        let kind = match state {
            None => Some(PieceKind::Reject),
            Some(s) if s == f.states.accept => Some(PieceKind::Accept),
            Some(s) if s == f.states.reject => Some(PieceKind::Reject),
            _ => None,
        };
        if let Some(kind) = kind {
            pieces.push(Piece { chi: base, gamma: Gamma::identity(n), kind });
            continue;
        }
        let state = state.unwrap();
        for (sets, rule) in boxes(f, state) {
            let mut chi = Some(base.clone());
            for t in 0..TAPES {
                chi = chi.and_then(|c| c.restrict(m, t, 0, codes(sets[t])));
            }
            let chi = chi.expect("symbol sets map to nonempty code sets");
            let to = tds.state_codes[rule.to];
            let gl = if to == code { F2Matrix::identity(n) } else { transvection(n, code, to) };
            let gamma = Gamma { shifts: std::array::from_fn(|t| head_shift(rule.mv(t))), gl };
            if state == f.states.initial {
                for (c, initial) in split_initial(&chi, m, letters, delims) {
                    let kind = if initial { PieceKind::Initial } else { PieceKind::Work };
                    pieces.push(Piece { chi: c, gamma: gamma.clone(), kind });
                }
            } else {
                pieces.push(Piece { chi, gamma, kind: PieceKind::Work });
            }
            if pieces.len() > MAX_PIECES {
                return Err(TdsError::TooLarge(format!("more than {MAX_PIECES} pieces")));
            }
        }
    }
    tds.pieces = pieces;
    tds.rebuild_index();
    Ok(tds)
}

/// Split a cylinder into its part inside the fresh-start set (delimiter at
/// -1, letter at 0 on every tape) and disjoint pieces covering the rest.
fn split_initial(chi: &StructCylinder, m: u32, letters: u64, delims: u64) -> Vec<(StructCylinder, bool)> {
    let mut out = Vec::new();
    let mut prefix = Some(chi.clone());
    for t in 0..TAPES {
        let Some(p) = prefix.clone() else { break };
        // tape t fails: letter at -1, or delimiter at -1 and delimiter at 0
        if let Some(c) = p.clone().restrict(m, t, -1, letters) {
            out.push((c, false));
        }
        if let Some(c) = p.clone().restrict(m, t, -1, delims).and_then(|c| c.restrict(m, t, 0, delims)) {
            out.push((c, false));
        }
        prefix = p.restrict(m, t, -1, delims).and_then(|c| c.restrict(m, t, 0, letters));
    }
    if let Some(c) = prefix {
        out.push((c, true));
    }
    out
}
