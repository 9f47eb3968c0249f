use zdforge::turing::corpus::{immediate_reject, m_always, m_loop, m_never, m_parity};
use zdforge::turing::{
    construct_foolproof, construct_readonly, decode_history, encode_history, run_readonly, run_standard,
    search_rejected_word, HistoryAlphabet, Machine, Move, Outcome, ReadOnlyTm, RoConfig, StandardTm, StdConfig,
    Violation,
};

fn names(m: &StandardTm, h: &[usize]) -> Vec<String> {
    let all = HistoryAlphabet::of(m).names(m);
    h.iter().map(|&s| all[s].clone()).collect()
}

#[test]
fn history_of_always_on_x() {
    let m = m_always();
    let h = encode_history(&m, &[0], 10).unwrap();
    assert_eq!(names(&m, &h).join(" "), "NEXT @INITIAL x/1 _/0 NEXT @ACCEPT x/0 _/1 NEXT");
    // the window does not depend on the fuel
    assert_eq!(encode_history(&m, &[0], 1000).unwrap(), h);
    assert!(encode_history(&m_never(), &[0], 10).is_err());
    assert!(encode_history(&m_loop(), &[0], 10).is_err());
}

#[test]
fn corpus_runs() {
    let r = run_standard(&m_always(), StdConfig::initial(&m_always(), &[0]), 10).unwrap();
    assert_eq!((r.outcome, r.steps), (Outcome::Accept, 1));
    let r = run_standard(&m_never(), StdConfig::initial(&m_never(), &[0]), 10).unwrap();
    assert_eq!(r.outcome, Outcome::Reject);
    let r = run_standard(&m_loop(), StdConfig::initial(&m_loop(), &[0]), 10).unwrap();
    assert_eq!((r.outcome, r.steps), (Outcome::OutOfFuel, 10));
}

#[test]
fn validation_examples() {
    assert!(m_always().validate().is_valid());
    let mut m = m_always();
    m.add_rule("INITIAL", "_", "INITIAL", None, Move::S).unwrap();
    assert!(m.validate().violations.iter().any(|v| matches!(v, Violation::EntersInitial { .. })));

    let text = "tm readonly 1\nalphabet x\nstates INITIAL ACCEPT REJECT\ntrans INITIAL x -> ACCEPT - R\n";
    let Machine::ReadOnly(ro) = Machine::parse(text).unwrap() else { panic!() };
    assert!(ro.validate().violations.iter().any(|v| matches!(v, Violation::Missing { .. })));
}

#[test]
fn two_head_markers_rejected() {
    let m = m_always();
    let r = construct_readonly(&m).unwrap();
    let ha = HistoryAlphabet::of(&m);
    let mut h = encode_history(&m, &[0], 10).unwrap();
    h[3] = ha.cell(m.empty(), true);
    assert!(decode_history(&m, &h).is_err());
    let out = run_readonly(&r, RoConfig::initial(&r, vec![h]), 100_000).unwrap().outcome;
    assert_eq!(out, Outcome::Reject);
}

fn accepts(r: &ReadOnlyTm, w: &[usize]) -> bool {
    run_readonly(r, RoConfig::initial(r, vec![w.to_vec()]), 1_000_000).unwrap().outcome == Outcome::Accept
}

#[test]
fn accepted_words_decode() {
    // every short word over the history alphabet is judged like the decoder
    let m = m_parity();
    let r = construct_readonly(&m).unwrap();
    let k = r.alphabet.len();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..4 {
        layer = layer.iter().flat_map(|w| (0..k).map(move |s| [w.as_slice(), &[s]].concat())).collect();
        for w in &layer {
            assert_eq!(accepts(&r, w), decode_history(&m, w).is_ok(), "{w:?}");
        }
    }
    let h = encode_history(&m, &[], 10).unwrap();
    assert!(accepts(&r, &h));
}

#[test]
fn constructions_serialize() {
    for m in [m_always(), m_never(), m_parity()] {
        let r = Machine::ReadOnly(construct_readonly(&m).unwrap());
        assert_eq!(Machine::parse(&r.to_text()).unwrap(), r);
        let f = construct_foolproof(&m).unwrap();
        assert!(f.states.names.iter().any(|s| s.starts_with("D.")));
        let f = Machine::ReadOnly(f);
        assert_eq!(Machine::parse(&f.to_text()).unwrap(), f);
    }
    let s = Machine::Standard(m_parity());
    assert_eq!(Machine::parse(&s.to_text()).unwrap(), s);
}

#[test]
fn foolproof_edge_cases() {
    let f = construct_foolproof(&m_always()).unwrap();
    let mut c = RoConfig::initial(&f, vec![vec![0], vec![0], vec![0]]);
    c.state = f.states.accept;
    let r = run_readonly(&f, c, 10).unwrap();
    assert_eq!((r.outcome, r.steps), (Outcome::Accept, 0));
    assert!(search_rejected_word(&f, 0, 100).is_none());
    assert_eq!(search_rejected_word(&immediate_reject(), 3, 10), Some(vec![vec![]; 3]));
}

#[test]
fn runs_are_deterministic() {
    let f = construct_foolproof(&m_parity()).unwrap();
    let h = encode_history(&m_parity(), &[0, 0], 10).unwrap();
    let c = RoConfig::initial(&f, vec![h.clone(), h, vec![0; 5000]]);
    let a = run_readonly(&f, c.clone(), 100_000).unwrap();
    let b = run_readonly(&f, c, 100_000).unwrap();
    assert_eq!((a.outcome, a.steps, a.config), (b.outcome, b.steps, b.config));
    assert_eq!(a.outcome, Outcome::Reject);
}
