//! Small reference machines used by tests, examples and the CLI.

use super::machine::{Move, ReadOnlyTm, StandardTm};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Accepts as soon as it sees a letter; the empty word falls into the
/// implicit reject row.
pub fn m_always() -> StandardTm {
    let mut m = StandardTm::new(names(&["x"]), names(&["INITIAL", "ACCEPT", "REJECT"])).unwrap();
    m.add_rule("INITIAL", "x", "ACCEPT", Some("x"), Move::R).unwrap();
    m
}

pub fn m_never() -> StandardTm {
    let mut m = StandardTm::new(names(&["x"]), names(&["INITIAL", "ACCEPT", "REJECT"])).unwrap();
    m.add_rule("INITIAL", "x", "REJECT", Some("x"), Move::S).unwrap();
    m
}

/// Accepts words of even length over `{x}`.
pub fn m_parity() -> StandardTm {
    let mut m = StandardTm::new(names(&["x"]), names(&["INITIAL", "ACCEPT", "REJECT", "ODD", "EVEN"])).unwrap();
    for (from, read, to) in [
        ("INITIAL", "x", "ODD"),
        ("INITIAL", "_", "ACCEPT"),
        ("ODD", "x", "EVEN"),
        ("ODD", "_", "REJECT"),
        ("EVEN", "x", "ODD"),
        ("EVEN", "_", "ACCEPT"),
    ] {
        m.add_rule(from, read, to, None, Move::R).unwrap();
    }
    m
}

/// Never halts: INITIAL hands over to a state that stays put forever.
pub fn m_loop() -> StandardTm {
    let mut m = StandardTm::new(names(&["x"]), names(&["INITIAL", "ACCEPT", "REJECT", "LOOP"])).unwrap();
    for from in ["INITIAL", "LOOP"] {
        for read in ["x", "_"] {
            m.add_rule(from, read, "LOOP", None, Move::S).unwrap();
        }
    }
    m
}

/// Three tapes over `{x}`; every INITIAL row rejects without moving.
pub fn immediate_reject() -> ReadOnlyTm {
    let mut m = ReadOnlyTm::new(names(&["x"]), names(&["INITIAL", "ACCEPT", "REJECT"]), vec![1, 1, 1]).unwrap();
    m.add_rule("INITIAL", &["*", "*", "*"], "REJECT", &[Move::S; 3]).unwrap();
    m
}

/// Named lookup used by the command line.
pub fn standard_by_name(name: &str) -> Option<StandardTm> {
    match name {
        "always" | "m_always" => Some(m_always()),
        "never" | "m_never" => Some(m_never()),
        "parity" | "m_parity" => Some(m_parity()),
        "loop" | "m_loop" => Some(m_loop()),
        _ => None,
    }
}
