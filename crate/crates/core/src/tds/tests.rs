use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::rational::Rational;
use crate::turing::corpus::{immediate_reject, m_always, m_never, m_parity};
use crate::turing::run::step_readonly;
use crate::turing::{construct_foolproof, encode_history, ReadOnlyTm, RoConfig};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn immediate_reject_system() {
    let tds = build_tds(&immediate_reject()).unwrap();
    assert_eq!((tds.m, tds.n), (1, 2));
    assert_eq!(initial_measure(&tds), q(1, 256));
    assert!(check_partition(&tds));
    assert!(static_check_no_restart(&tds));
    for p in &tds.pieces {
        if matches!(p.kind, PieceKind::Accept | PieceKind::Reject) {
            assert!(p.gamma.is_identity());
        }
    }
    let start = checks::fresh_start(&tds, &[vec![1], vec![1, 1], vec![1]], 4);
    let next = tds_step(&tds, &start).unwrap();
    assert_eq!(next.state, tds.state_codes[2]);
    assert_eq!(next.tapes, start.tapes);
    assert_eq!(tds_step(&tds, &next).unwrap(), next);
    let report = sample_check_stops(&tds, 1000, 10, 1).unwrap();
    assert!(report.all_stop() && report.max_steps <= 2);
}

#[test]
fn operators_of_immediate_reject() {
    let tds = build_tds(&immediate_reject()).unwrap();
    let ops = build_operators(&tds).unwrap();
    assert!(ops.partition_of_unity);
    assert!(ops.self_adjoint);
    assert_eq!(ops.chi_initial.trace(), q(1, 256));
    assert_eq!(ops.s.group.h.order(), 24.into());
}

#[test]
fn rejection_measure_closed_form() {
    let f = immediate_reject();
    assert_eq!(estimate_rejection_measure(&f, 1, 10).unwrap().value, q(1, 2048));
    assert_eq!(estimate_rejection_measure(&f, 3, 10).unwrap().value, q(343, 131072));
    let mut prev = Rational::from_integer(0.into());
    for l in 1..=4 {
        let v = estimate_rejection_measure(&f, l, 10).unwrap().value;
        assert!(v >= prev);
        prev = v;
    }
}

fn random_config(f: &ReadOnlyTm, rng: &mut ChaCha8Rng, initial: bool) -> RoConfig {
    let letters = f.alphabet.len();
    let tapes: Vec<Vec<usize>> = (0..3)
        .map(|_| (0..rng.random_range(1..8)).map(|_| rng.random_range(0..letters)).collect())
        .collect();
    if initial {
        return RoConfig::initial(f, tapes);
    }
    let heads = tapes.iter().map(|t| rng.random_range(0..t.len() as i64)).collect();
    RoConfig { tapes, heads, state: rng.random_range(0..f.states.len()), last: vec![None; 3] }
}

/// Iterate both the machine and the system and compare after every step.
fn trajectories_agree(f: &ReadOnlyTm, tds: &TuringDynamicalSystem, c: RoConfig, fuel: u64) -> bool {
    let mut c = c;
    let mut z = SymbolicConfiguration::from_machine(tds, &c, fuel as usize + 2);
    for step in 0..fuel {
        if !z.agrees_with(tds, f, &c) {
            return false;
        }
        if f.states.is_halting(c.state) {
            return tds_step(tds, &z).unwrap() == z;
        }
        step_readonly(f, &mut c, step).unwrap();
        z = tds_step(tds, &z).unwrap();
    }
    true
}

#[test]
fn trajectory_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [m_always(), m_never(), m_parity()] {
        let f = construct_foolproof(&m).unwrap();
        let tds = build_tds(&f).unwrap();
        assert!(static_check_no_restart(&tds));
        for i in 0..60 {
            let c = random_config(&f, &mut rng, i % 2 == 0);
            assert!(trajectories_agree(&f, &tds, c, 60));
        }
    }
}

#[test]
fn history_chains_are_disjoint() {
    let m = m_always();
    let f = construct_foolproof(&m).unwrap();
    let tds = build_tds(&f).unwrap();
    let h: Vec<u32> = encode_history(&m, &[0], 10).unwrap().iter().map(|&s| tds.code_of(s)).collect();
    let starts: Vec<_> = (100..110)
        .map(|len| checks::fresh_start(&tds, &[h.clone(), h.clone(), vec![1; len]], 130))
        .collect();
    let report = check_disjoint_chains(&tds, &starts, 400, 0).unwrap();
    assert_eq!(report.rejecting, 10);
    assert!(report.disjoint());
    let random = sample_check_disjoint_chains(&tds, 200, 6, 200, 5).unwrap();
    assert!(random.disjoint());
}

#[test]
fn restart_and_cycle_detected() {
    let mut tds = build_tds(&immediate_reject()).unwrap();
    // send one INITIAL piece back to INITIAL with a shift
    let i = tds.pieces.iter().position(|p| p.kind == PieceKind::Work).unwrap();
    tds.pieces[i].gamma = Gamma { shifts: [1, 0, 0], gl: crate::duality::F2Matrix::identity(2) };
    assert!(!static_check_no_restart(&tds));
    // a 2-cycle: INITIAL and REJECT codes swap forever
    let mut cyc = build_tds(&immediate_reject()).unwrap();
    let swap = crate::duality::transvection(2, 1, 3);
    for p in cyc.pieces.iter_mut() {
        if matches!(p.chi.state, Some(1 | 3)) {
            p.gamma = Gamma { shifts: [0; 3], gl: swap.clone() };
            p.kind = PieceKind::Work;
        }
    }
    let report = sample_check_stops(&cyc, 50, 20, 3).unwrap();
    assert!(report.failures.iter().any(|f| matches!(f, checks::StopFailure::Cycle { period: 2, .. })));
}

#[test]
fn compile_immediate_reject() {
    let c = compile_foolproof(&immediate_reject(), CompileMode::Structured).unwrap();
    assert_eq!(c.manifest.h_order, "24");
    assert_eq!(c.manifest.mu_initial, "1/256");
    c.manifest.check(&c.operator).unwrap();
    let text = c.operator.to_text();
    let back = crate::duality::StructuredOperator::from_text(&text).unwrap();
    assert_eq!(back, c.operator);
    assert!(back.star().equals(&back).unwrap());
    let json = serde_json::to_string(&c.manifest).unwrap();
    let m: Manifest = serde_json::from_str(&json).unwrap();
    assert_eq!(m, c.manifest);
    assert!(compile_foolproof(&immediate_reject(), CompileMode::Expanded).is_err());
}

#[test]
fn compile_always_through_foolproof() {
    let c = compile(&m_always(), CompileMode::Structured).unwrap();
    c.manifest.check(&c.operator).unwrap();
    assert_eq!(c.manifest.n, 8);
}
