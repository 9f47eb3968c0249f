//! Computation histories and the read-only checker R(M).
use zdforge::turing::corpus::m_parity;
use zdforge::turing::{construct_readonly, decode_history, encode_history, run_readonly, HistoryAlphabet, RoConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = m_parity();
    let word = [0; 4];
    let h = encode_history(&m, &word, 100)?;
    let names = HistoryAlphabet::of(&m).names(&m);
    println!("history of xxxx: {}", h.iter().map(|&s| names[s].as_str()).collect::<Vec<_>>().join(" "));
    println!("decodes to input {:?}", decode_history(&m, &h)?);

    let r = construct_readonly(&m)?;
    println!("R(M): {} states, valid: {}", r.states.len(), r.validate().is_valid());
    let run = |w: Vec<usize>| run_readonly(&r, RoConfig::initial(&r, vec![w]), 100_000).map(|x| x.outcome);
    println!("R(M) on the history: {:?}", run(h.clone())?);

    let mut bad = h.clone();
    bad.swap(1, 2);
    println!("R(M) on a corrupted copy: {:?}", run(bad)?);
    Ok(())
}
