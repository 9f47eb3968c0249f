//! Checkable surrogates for the structural hypotheses on the system:
//! partition, no restart, stopping, and disjoint accepting chains.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::rational::Rational;

use super::step::{classify, tds_step, SymbolicConfiguration, Window};
use super::system::{PieceKind, TuringDynamicalSystem, TAPES};
use super::TdsError;

/// Pieces are pairwise disjoint and their measures add up to 1.
pub fn check_partition(tds: &TuringDynamicalSystem) -> bool {
    let total: Rational = tds.pieces.iter().map(|p| p.chi.measure(tds.m, Some(tds.n))).sum();
    if total != Rational::one() {
        return false;
    }
    let mut states: Vec<u32> = tds.pieces.iter().filter_map(|p| p.chi.state).collect();
    states.sort();
    states.dedup();
    states.iter().all(|&s| {
        let ids = tds.pieces_for_state(s);
        ids.iter().enumerate().all(|(k, &i)| {
            ids[k + 1..].iter().all(|&j| tds.pieces[i].chi.intersect(&tds.pieces[j].chi, tds.m).is_none())
        })
    })
}

/// No non-neutral piece is mapped onto a set meeting a fresh start. Pieces
/// with the neutral element are fixed points and cannot restart anything.
pub fn static_check_no_restart(tds: &TuringDynamicalSystem) -> bool {
    let initial: Vec<_> = tds.pieces.iter().filter(|p| p.kind == PieceKind::Initial).collect();
    tds.pieces.iter().filter(|p| !p.gamma.is_identity()).all(|p| {
        let image = p.chi.conjugate(&p.gamma.source_elem());
        initial.iter().all(|i| image.intersect(&i.chi, tds.m).is_none())
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum StopFailure {
    OutOfFuel { sample: usize },
    Cycle { sample: usize, period: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct StopReport {
    pub seed: u64,
    pub samples: usize,
    pub stopped: usize,
    pub max_steps: u64,
    pub failures: Vec<StopFailure>,
}

impl StopReport {
    pub fn all_stop(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_window(rng: &mut impl Rng, m: u32, radius: i64) -> Window {
    Window { lo: -radius, cells: (0..2 * radius + 1).map(|_| rng.random_range(0..1u32 << m)).collect() }
}

fn halted(tds: &TuringDynamicalSystem, c: &SymbolicConfiguration) -> Result<bool, TdsError> {
    let k = tds.pieces[classify(tds, c)?].kind;
    Ok(matches!(k, PieceKind::Accept | PieceKind::Reject))
}

/// Iterate from `c` until an accept/reject piece, a repeated point, or `fuel`.
pub fn trajectory_end(
    tds: &TuringDynamicalSystem,
    mut c: SymbolicConfiguration,
    fuel: u64,
) -> Result<(SymbolicConfiguration, Result<u64, StopFailure>), TdsError> {
    // tape contents never change, so a point is its state and offsets
    let mut seen: HashMap<(u32, [i64; TAPES]), u64> = HashMap::new();
    for step in 0..=fuel {
        if halted(tds, &c)? {
            return Ok((c, Ok(step)));
        }
        let key = (c.state, std::array::from_fn(|t| c.tapes[t].lo));
        if let Some(prev) = seen.insert(key, step) {
            return Ok((c, Err(StopFailure::Cycle { sample: 0, period: step - prev })));
        }
        if step < fuel {
            c = tds_step(tds, &c)?;
        }
    }
    Ok((c, Err(StopFailure::OutOfFuel { sample: 0 })))
}

/// Random points (every state code, uniform letters) must reach an accept
/// or reject piece within `fuel` steps.
pub fn sample_check_stops(tds: &TuringDynamicalSystem, samples: usize, fuel: u64, seed: u64) -> Result<StopReport, TdsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = fuel as i64 + 2;
    let mut report = StopReport { seed, samples, stopped: 0, max_steps: 0, failures: Vec::new() };
    for sample in 0..samples {
        let tapes = (0..TAPES).map(|_| random_window(&mut rng, tds.m, radius)).collect();
        let c = SymbolicConfiguration { tapes, state: rng.random_range(0..1u32 << tds.n) };
        match trajectory_end(tds, c, fuel)?.1 {
            Ok(steps) => {
                report.stopped += 1;
                report.max_steps = report.max_steps.max(steps);
            }
            Err(StopFailure::Cycle { period, .. }) => report.failures.push(StopFailure::Cycle { sample, period }),
            Err(StopFailure::OutOfFuel { .. }) => report.failures.push(StopFailure::OutOfFuel { sample }),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub seed: u64,
    pub samples: usize,
    pub distinct_starts: usize,
    pub accepting: usize,
    pub rejecting: usize,
    /// Pairs of distinct starts that reached the same final point.
    pub collisions: Vec<(usize, usize)>,
}

impl ChainReport {
    pub fn disjoint(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Fresh start built from three words of letter codes: delimiter at -1,
/// the word from 0, then delimiters up to `radius`.
pub fn fresh_start(tds: &TuringDynamicalSystem, words: &[Vec<u32>; TAPES], radius: i64) -> SymbolicConfiguration {
    let tapes = words
        .iter()
        .map(|w| {
            let hi = radius.max(w.len() as i64 + 1);
            let cells = (-radius..=hi).map(|p| if p < 0 || p as usize >= w.len() { 0 } else { w[p as usize] }).collect();
            Window { lo: -radius, cells }
        })
        .collect();
    SymbolicConfiguration { tapes, state: tds.initial_code() }
}

/// Run every start to its end and report distinct starts that end at the same point.
pub fn check_disjoint_chains(
    tds: &TuringDynamicalSystem,
    starts: &[SymbolicConfiguration],
    fuel: u64,
    seed: u64,
) -> Result<ChainReport, TdsError> {
    let mut finals: HashMap<SymbolicConfiguration, usize> = HashMap::new();
    let mut uniq: HashSet<&SymbolicConfiguration> = HashSet::new();
    let mut report = ChainReport {
        seed,
        samples: starts.len(),
        distinct_starts: 0,
        accepting: 0,
        rejecting: 0,
        collisions: Vec::new(),
    };
    for (i, s) in starts.iter().enumerate() {
        if !uniq.insert(s) {
            continue;
        }
        report.distinct_starts += 1;
        let (end, outcome) = trajectory_end(tds, s.clone(), fuel)?;
        if outcome.is_err() {
            continue;
        }
        match tds.pieces[classify(tds, &end)?].kind {
            PieceKind::Accept => report.accepting += 1,
            _ => report.rejecting += 1,
        }
        // the final point as a subset of X: normalise the windows
        if let Some(&j) = finals.get(&end) {
            report.collisions.push((j, i));
        } else {
            finals.insert(end, i);
        }
    }
    Ok(report)
}

/// Random fresh starts with words of length `1..=max_len`.
pub fn sample_check_disjoint_chains(
    tds: &TuringDynamicalSystem,
    samples: usize,
    max_len: usize,
    fuel: u64,
    seed: u64,
) -> Result<ChainReport, TdsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = fuel as i64 + max_len as i64 + 2;
    let starts: Vec<SymbolicConfiguration> = (0..samples)
        .map(|_| {
            let words = std::array::from_fn(|_| {
                let len = rng.random_range(1..=max_len.max(1));
                (0..len).map(|_| tds.letter_codes[rng.random_range(0..tds.letter_codes.len())]).collect()
            });
            fresh_start(tds, &words, radius)
        })
        .collect();
    check_disjoint_chains(tds, &starts, fuel, seed)
}

/// Measure of the fresh-start set, summed over the pieces.
pub fn initial_measure(tds: &TuringDynamicalSystem) -> Rational {
    tds.pieces
        .iter()
        .filter(|p| p.kind == PieceKind::Initial)
        .map(|p| p.chi.measure(tds.m, Some(tds.n)))
        .fold(Rational::zero(), |a, b| a + b)
}
