use proptest::prelude::*;

use zdforge::algebra::{normalize_positive, parse_word, text, to_word, Factor, GeneratorAlphabet, Group, GroupElement, Lamplighter, RingElement};
use zdforge::duality::{cylinder_to_ring, BitCylinder};
use zdforge::rational::{rat, Rational};
use zdforge::spectral::quotient::DEFAULT_MAX_SIZE;
use zdforge::spectral::{build_quotient, convolution_matrix, moments};
use zdforge::turing::corpus::m_parity;
use zdforge::turing::{
    construct_readonly, encode_history, run_readonly, Machine, Move, Outcome, RoConfig, StandardTm, Violation,
};

const DIM: usize = 2;

fn factor() -> impl Strategy<Value = Factor> {
    (prop::collection::btree_set(-4i64..=4, 0..4), -3i64..=3).prop_map(|(l, s)| Factor::new(l, s))
}

fn element() -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(factor(), DIM).prop_map(GroupElement::from_factors)
}

fn ring_element() -> impl Strategy<Value = RingElement> {
    prop::collection::vec((element(), -3i64..=3, 1i64..=3), 0..4).prop_map(|ts| {
        RingElement::from_terms(Lamplighter::new(DIM), ts.into_iter().map(|(g, n, d)| (g, rat(n, d))))
    })
}

fn integral_word() -> impl Strategy<Value = String> {
    let gens = prop::sample::select(vec!["a1", "t1", "T1", "a2", "t2", "T2"]);
    let term = (any::<bool>(), prop::collection::vec(gens, 0..4));
    prop::collection::vec(term, 1..5).prop_map(|ts| {
        ts.into_iter()
            .enumerate()
            .map(|(i, (neg, gs))| {
                let body = if gs.is_empty() { "1".to_string() } else { gs.join(" ") };
                match (i, neg) {
                    (0, false) => body,
                    (0, true) => format!("- {body}"),
                    (_, false) => format!("+ {body}"),
                    (_, true) => format!("- {body}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(x in element(), y in element(), z in element()) {
        let g = Lamplighter::new(DIM);
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        prop_assert_eq!(g.mul(&g.identity(), &x), x.clone());
        // canonical lamps are strictly increasing
        for f in x.factors() {
            prop_assert!(f.lamps().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn ring_axioms(x in ring_element(), y in ring_element(), z in ring_element()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().star(), y.star().mul(&x.star()).unwrap());
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().trace_vn(), y.mul(&x).unwrap().trace_vn());
        prop_assert!(x.mul(&x.star()).unwrap().trace_vn() >= Rational::from_integer(0.into()));
    }

    #[test]
    fn element_file_round_trip(x in ring_element()) {
        prop_assert_eq!(text::from_text(&text::to_text(&x)).unwrap(), x);
    }

    #[test]
    fn word_round_trip(w in integral_word()) {
        let alphabet = GeneratorAlphabet::lamplighter(DIM);
        let x = parse_word(&w, &alphabet).unwrap();
        if !x.is_zero() {
            prop_assert_eq!(parse_word(&to_word(&x).unwrap(), &alphabet).unwrap(), x);
        }
    }

    #[test]
    fn cylinders_are_projections(bits in prop::collection::vec(0u8..2, 0..5), start in -3i64..3, other in (-4i64..4, 0u8..2)) {
        let c = BitCylinder::pattern(start, &bits);
        let p = cylinder_to_ring(&c);
        prop_assert_eq!(p.mul(&p).unwrap(), p.clone());
        prop_assert!(p.is_self_adjoint());
        prop_assert_eq!(p.trace_vn(), c.measure());
        let d = BitCylinder::new([other]);
        let q = cylinder_to_ring(&d);
        let expect = match c.intersect(&d) {
            Some(cd) => cylinder_to_ring(&cd),
            None => RingElement::zero(p.group()),
        };
        prop_assert_eq!(p.mul(&q).unwrap(), expect);
    }

    #[test]
    fn quotient_map_is_homomorphism(x in element(), y in element(), n in 2u32..6) {
        let q = build_quotient(n, DIM).unwrap();
        let inf = Lamplighter::new(DIM);
        let fin = q.group();
        prop_assert_eq!(q.quotient_map(&inf.mul(&x, &y)), fin.mul(&q.quotient_map(&x), &q.quotient_map(&y)));
        prop_assert_eq!(q.element(q.index(&q.quotient_map(&x))), q.quotient_map(&x));
    }

    #[test]
    fn self_adjoint_gives_symmetric(w in integral_word(), n in 2u32..4) {
        let t = parse_word(&w, &GeneratorAlphabet::lamplighter(DIM)).unwrap();
        let s = t.star().mul(&t).unwrap();
        let q = build_quotient(n, DIM).unwrap();
        let m = convolution_matrix(&q, &s, DEFAULT_MAX_SIZE).unwrap();
        prop_assert!(m.is_symmetric());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moments_non_increasing(w in integral_word()) {
        let t = parse_word(&w, &GeneratorAlphabet::lamplighter(DIM)).unwrap();
        if let Ok((p, _)) = normalize_positive(&t) {
            let ms = moments(&p, 8, 100_000).unwrap();
            prop_assert!(ms.windows(2).all(|w| w[1] <= w[0]), "{:?}", ms);
            prop_assert!(ms.iter().all(|m| *m >= Rational::from_integer(0.into())));
        }
    }

    #[test]
    fn parity_histories_accepted(len in 0usize..7) {
        let m = m_parity();
        let r = construct_readonly(&m).unwrap();
        let h = encode_history(&m, &vec![0; len], 100);
        prop_assert_eq!(h.is_ok(), len % 2 == 0);
        if let Ok(h) = h {
            let out = run_readonly(&r, RoConfig::initial(&r, vec![h]), 1_000_000).unwrap().outcome;
            prop_assert_eq!(out, Outcome::Accept);
        }
    }
}

fn random_machine() -> impl Strategy<Value = StandardTm> {
    let states = ["INITIAL", "ACCEPT", "REJECT", "P", "Q"];
    let mv = prop::sample::select(vec![Move::L, Move::S, Move::R]);
    let row = (prop::sample::select(vec!["INITIAL", "P", "Q"]), 0usize..3, prop::sample::select(states.to_vec()), prop::option::of(0usize..2), mv);
    prop::collection::vec(row, 0..10).prop_map(move |rows| {
        let mut m = StandardTm::new(vec!["x".into(), "y".into()], states.iter().map(|s| s.to_string()).collect()).unwrap();
        let sym = ["x", "y", "_"];
        for (from, read, to, write, mv) in rows {
            let _ = m.add_rule(from, sym[read], to, write.map(|w| sym[w]), mv);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn machine_text_round_trip(m in random_machine()) {
        let text = Machine::Standard(m.clone()).to_text();
        prop_assert_eq!(Machine::parse(&text).unwrap(), Machine::Standard(m));
    }

    #[test]
    fn validate_flags_exactly_initial_targets(m in random_machine()) {
        let enters = m.table.values().any(|r| r.to == m.states.initial);
        let report = m.validate();
        prop_assert_eq!(report.violations.iter().any(|v| matches!(v, Violation::EntersInitial { .. })), enters);
        prop_assert_eq!(report.is_valid(), !enters);
    }
}
